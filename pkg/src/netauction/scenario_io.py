"""Scenario and report files, bundled fixtures, and report emission.

Scenario schema (version 1):

    {
      "schema_version": 1,
      "mode": "unit_demand" | "single_minded",
      "seller": "s",
      "seller_neighbors": ["A", "B"],
      "agents": [
        {"id": "A", "bid": "4", "neighbors": ["F"], "bundle": ["a", "b"]},
        ...
      ],
      "k": 3,                  # unit_demand only
      "items": ["a", "b", "c"] # single_minded only
    }

Bids are decimal or fraction strings parsed exactly; neighbor lists keep
their declared order (it is the scan tie-break).  Reports overlay files carry
optional "reported_bids" / "reported_invites" maps; anything omitted stays
truthful.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .market import ReportProfile, Scenario, SINGLE_MINDED, UNIT_DEMAND, ValidationError
from .values import parse_value, value_str

SCHEMA_VERSION = 1


class ParseError(ValueError):
    """Malformed scenario or reports file."""


class SchemaMismatchError(ParseError):
    """File declares an unsupported schema version."""


def _load_json(path: str | Path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def scenario_from_dict(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ParseError("scenario file must hold a JSON object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaMismatchError(f"unsupported schema_version {version!r}")
    mode = data.get("mode", UNIT_DEMAND)
    if mode not in (UNIT_DEMAND, SINGLE_MINDED):
        raise ParseError(f"unknown mode {mode!r}")
    try:
        seller = data["seller"]
        agents = data["agents"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from exc
    bids: dict[str, Fraction] = {}
    neighbors: dict[str, list[str]] = {}
    bundles: dict[str, list[str]] = {}
    for row in agents:
        try:
            aid = row["id"]
            bids[aid] = parse_value(str(row["bid"]))
        except KeyError as exc:
            raise ParseError(f"agent row missing field {exc.args[0]!r}") from exc
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"agent {row.get('id')!r}: bad bid {row.get('bid')!r}") from exc
        neighbors[aid] = list(row.get("neighbors", []))
        if "bundle" in row:
            bundles[aid] = list(row["bundle"])
    try:
        if mode == UNIT_DEMAND:
            return Scenario.build(
                seller,
                bids,
                neighbors,
                data.get("seller_neighbors", []),
                unit_count=data.get("k"),
            )
        return Scenario.build(
            seller,
            bids,
            neighbors,
            data.get("seller_neighbors", []),
            items=data.get("items", []),
            bundles=bundles,
        )
    except ValidationError:
        raise


def parse_scenario(path: str | Path) -> Scenario:
    return scenario_from_dict(_load_json(path))


def scenario_to_dict(scenario: Scenario) -> dict:
    rows = []
    for aid in scenario.agent_ids:
        row: dict = {
            "id": aid,
            "bid": value_str(scenario.true_bids[aid]),
            "neighbors": list(scenario.true_neighbors[aid]),
        }
        if scenario.mode == SINGLE_MINDED:
            row["bundle"] = list(scenario.bundle_of(aid))
        rows.append(row)
    data: dict = {
        "schema_version": SCHEMA_VERSION,
        "mode": scenario.mode,
        "seller": scenario.seller,
        "seller_neighbors": list(dict(scenario.neighbors)[scenario.seller]),
        "agents": rows,
    }
    if scenario.mode == UNIT_DEMAND:
        data["k"] = scenario.unit_count
    else:
        data["items"] = list(scenario.items or ())
    return data


def emit_scenario(scenario: Scenario, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(scenario), fh, indent=2, sort_keys=True)
        fh.write("\n")


def parse_reports(path: str | Path, scenario: Scenario) -> ReportProfile:
    """Overlay file: truthful defaults, with per-agent bid/invite overrides."""
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError("reports file must hold a JSON object")
    profile = ReportProfile.truthful(scenario)
    for agent, bid in (data.get("reported_bids") or {}).items():
        try:
            profile = profile.replace(scenario, agent, bid=parse_value(str(bid)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad reported bid for {agent!r}: {bid!r}") from exc
    for agent, invites in (data.get("reported_invites") or {}).items():
        profile = profile.replace(scenario, agent, invites=list(invites))
    return profile.validated(scenario)


def fixture_path(name: str) -> Path:
    """Path of a bundled fixture, e.g. fixture_path("fig1")."""
    if not name.endswith(".json"):
        name = f"{name}.json"
    return Path(str(resources.files("netauction").joinpath("fixtures", name)))


def load_fixture(name: str) -> Scenario:
    return parse_scenario(fixture_path(name))


def dna_mu_counterexample(k: int) -> Scenario:
    """Six-agent chain market plus k-3 seller-adjacent dummy bidders whose bids
    top everything; shrinks the k-unit instance back to the 3-unit one."""
    if k < 3:
        raise ValueError("construction needs k >= 3")
    bids = {"A": 4, "B": 1, "F": 6, "C": 4, "D": 7, "H": 5}
    neighbors = {"A": [], "B": ["C", "F"], "C": ["D"], "D": ["H"], "F": [], "H": []}
    seller_neighbors = ["A", "B"]
    top = max(bids.values()) + 1
    for t in range(k - 3):
        dummy = f"m{t + 1}"
        bids[dummy] = top
        neighbors[dummy] = []
        seller_neighbors.append(dummy)
    return Scenario.build("s", bids, neighbors, seller_neighbors, unit_count=k)
