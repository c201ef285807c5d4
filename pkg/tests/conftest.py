from __future__ import annotations

import sys
from functools import lru_cache

import pytest

from tambara.functor import (burnside_c2_mod, constant_functor, fixed_point_functor,
                             frobenius_action, product_functor)
from tambara.groups import builtin_group
from tambara.rings import construct_gf, construct_zmod


@lru_cache(maxsize=None)
def fixtures() -> dict:
    c2 = builtin_group("C2")
    gf4 = construct_gf(4)
    f2, f3 = constant_functor(construct_zmod(2), c2), constant_functor(construct_zmod(3), c2)
    return {
        "z4-trivial": constant_functor(construct_zmod(4), builtin_group("trivial")),
        "z6-trivial": constant_functor(construct_zmod(6), builtin_group("trivial")),
        "z12-trivial": constant_functor(construct_zmod(12), builtin_group("trivial")),
        "f2-c2": f2,
        "f3-c2": f3,
        "z4-c2": constant_functor(construct_zmod(4), c2),
        "z6-c2": constant_functor(construct_zmod(6), c2),
        "gf4-c2": fixed_point_functor(gf4, c2, frobenius_action(gf4, c2)),
        "burnside3": burnside_c2_mod(3),
        "burnside9": burnside_c2_mod(9),
        "f2xf3-c2": product_functor(f2, f3),
        "z9-c3": constant_functor(construct_zmod(9), builtin_group("C3")),
        "f2-s3": constant_functor(construct_zmod(2), builtin_group("S3")),
    }


ACCEPTANCE_SET = ["z4-trivial", "z6-trivial", "z12-trivial", "f2-c2", "z4-c2", "z6-c2", "gf4-c2",
                  "burnside3", "burnside9", "f2xf3-c2", "z9-c3", "f2-s3"]
C2_SET = ["f2-c2", "z4-c2", "z6-c2", "gf4-c2", "burnside3", "burnside9", "f2xf3-c2"]


@pytest.fixture(scope="session")
def fx() -> dict:
    return fixtures()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    RESULTS = mod.RESULTS
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, title = RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}")
