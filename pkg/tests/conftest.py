from __future__ import annotations

from dataclasses import dataclass

import pytest

from weightvar.rootsys import RootSystem, build_root_system
from weightvar.schubert import SchubertCalculus
from weightvar.weyl import WeylGroup, generate_weyl


@dataclass
class Session:
    rs: RootSystem
    group: WeylGroup
    calc: SchubertCalculus


_CACHE: dict[tuple[str, int], Session] = {}


def get_session(type_label: str, rank: int) -> Session:
    key = (type_label, rank)
    if key not in _CACHE:
        rs = build_root_system(type_label, rank)
        g = generate_weyl(rs)
        _CACHE[key] = Session(rs=rs, group=g, calc=SchubertCalculus(g))
    return _CACHE[key]


@pytest.fixture(scope="session")
def session():
    """Factory fixture: session('A', 2) -> shared (rs, group, calc)."""
    return get_session
