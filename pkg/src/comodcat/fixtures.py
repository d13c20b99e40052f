"""The shipped fixture algebroids F1, F2 and F3 and their comodules.

* F1: functions on ℤ/2 over 𝔽₂ (finite Hopf algebra, comodules = 𝔽₂[ℤ/2]-modules).
* F2: ℚ[t, t⁻¹] with t grouplike (comodules = ℤ-graded vector spaces, infinite rank).
* F3: the split algebroid of ℤ/2 acting on ℚ[x] by x ↦ −x.
"""

from functools import lru_cache
from importlib import resources

from .algebra import PresentedAlgebra
from .hopf import hopf_algebra, split_algebroid
from .serialize import load

FIXTURES = ("F1", "F2", "F3")

DESCRIPTIONS = {
    "F1": "functions on Z/2 over F_2 (rank 2, free-finite)",
    "F2": "Laurent Hopf algebra Q[t,t^-1] (infinite rank, graded backend)",
    "F3": "split algebroid (Q[x], Q[Z/2] ⊗ Q[x]) with x odd (rank 2, free-finite)",
}


def fixture_text(name):
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return resources.files(__package__).joinpath("fixtures", f"{name}.def").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load_fixture(name):
    """The parsed :class:`~comodcat.serialize.Definition` of a fixture (shared instance)."""
    return load(fixture_text(name))


def group_algebra_z2():
    """ℚ[ℤ/2] = ℚ[g]/(g² − 1) with g grouplike."""
    return hopf_algebra(0, ["g"], ["g^2-1"], ["g_1*g_2"], ["1"], ["g"], name="Q[Z/2]")


def split_z2_line():
    """F3 built by the split construction instead of from its definition file."""
    A = PresentedAlgebra(0, ["x"], [])
    return split_algebroid(A, group_algebra_z2(), ["g*x"], name="F3")
