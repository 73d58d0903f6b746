"""JSON instance files.

Group:    {"name": str, "order": n, "table": [[int]]}
Subgroup: {"members": [int]}
Action:   {"acting": ref, "target": ref, "images": {"s": [perm]}}

A group ref is a catalog name ("Z4"), a path to a group file, or an inline
group object. Images may be given on a generating subset only.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional, Union

from . import catalog
from .actions import GroupAction, build_action, trivial_action
from .errors import FincohError
from .groups import FiniteGroup, Subgroup, build_group, make_subgroup


class InputError(FincohError):
    pass


def _read(path: Union[str, Path]) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def group_from_json(obj: dict) -> FiniteGroup:
    if not isinstance(obj, dict) or "table" not in obj:
        raise InputError("group object needs a 'table' field")
    G = build_group(obj["table"], obj.get("name", ""))
    if "order" in obj and obj["order"] != G.order:
        raise InputError(f"declared order {obj['order']} does not match table size {G.order}")
    return G


def load_group(ref: Union[str, dict, Path]) -> FiniteGroup:
    if isinstance(ref, dict):
        return group_from_json(ref)
    ref = str(ref)
    if ref in catalog.CATALOG_NAMES:
        return catalog.get(ref)
    return group_from_json(_read(ref))


def load_subgroup(G: FiniteGroup, ref: Union[str, list, dict, Path]) -> Subgroup:
    if isinstance(ref, (str, Path)):
        ref = _read(ref)
    if isinstance(ref, dict):
        ref = ref.get("members")
    if not isinstance(ref, list):
        raise InputError("subgroup needs a 'members' list")
    return make_subgroup(G, ref)


def action_from_json(obj: dict, acting: Optional[FiniteGroup] = None,
                     target: Optional[FiniteGroup] = None) -> GroupAction:
    if acting is None:
        if "acting" not in obj:
            raise InputError("action file names no acting group")
        acting = load_group(obj["acting"])
    if target is None:
        if "target" not in obj:
            raise InputError("action file names no target group")
        target = load_group(obj["target"])
    images = obj.get("images", {})
    if not isinstance(images, dict):
        raise InputError("'images' must map acting-element indices to permutations")
    if not images:
        return trivial_action(acting, target)
    try:
        parsed = {int(k): v for k, v in images.items()}
    except ValueError:
        raise InputError("image keys must be acting-element indices") from None
    return build_action(acting, target, parsed)


def load_action(path: Optional[Union[str, Path]] = None, acting: Optional[FiniteGroup] = None,
                target: Optional[FiniteGroup] = None) -> GroupAction:
    if path is None:
        if acting is None or target is None:
            raise InputError("need an action file or both acting and target groups")
        return trivial_action(acting, target)
    return action_from_json(_read(path), acting, target)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
