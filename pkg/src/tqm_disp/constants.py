"""Physical constants and the handful of unit conversions used across the package.

Everything internal is in natural units (hbar = c = 1).  For presentation we
measure time in attoseconds, energy in eV and length in picometres, so the
two conversion factors that matter are hbar in eV*as and c in pm/as.
"""

from dataclasses import dataclass, field, replace

from scipy import constants as sp

__all__ = [
    "PhysicalConstants",
    "CONSTANTS",
    "UnitError",
    "bohr_time",
    "convert",
    "C_PM_PER_AS",
    "C_FM_PER_YS",
    "UNITS",
]

# speed of light, exact
C_PM_PER_AS = sp.c * 1e12 / 1e18  # 299.792458
C_FM_PER_YS = sp.c * 1e15 / 1e24  # 0.299792458


class UnitError(ValueError):
    """Raised for a unit pair the converter does not know."""


@dataclass(frozen=True)
class PhysicalConstants:
    """Immutable constant set.

    ``alpha`` and ``m_e`` are the inputs; ``a0_pm`` and ``a0_as`` are derived
    from them (a0 = 1/(alpha m_e)) so that rescaling either input moves the
    Bohr radius consistently.
    """

    alpha: float = 1.0 / 137.035999
    m_e: float = 510_998.95  # eV
    hbar_eV_as: float = sp.hbar / sp.e * 1e18  # 658.2119569...
    proton_radius_fm: float = 0.841
    a0_pm: float = field(init=False)
    a0_as: float = field(init=False)

    def __post_init__(self):
        if self.alpha <= 0 or self.m_e <= 0:
            raise ValueError("alpha and m_e must be positive")
        a0_as = self.hbar_eV_as / (self.alpha * self.m_e)
        object.__setattr__(self, "a0_as", a0_as)
        object.__setattr__(self, "a0_pm", a0_as * C_PM_PER_AS)

    @property
    def hbar_c_eV_pm(self):
        return self.hbar_eV_as * C_PM_PER_AS

    def replace(self, **changes):
        """Return a copy with some inputs changed (derived fields recomputed)."""
        return replace(self, **changes)

    # natural-unit helpers: time unit = 1 as, energy unit = 1/as
    def energy_to_natural(self, e_eV):
        return e_eV / self.hbar_eV_as

    def energy_from_natural(self, e_nat):
        return e_nat * self.hbar_eV_as

    def length_to_natural(self, x_pm):
        return x_pm / C_PM_PER_AS

    def as_dict(self):
        return {
            "alpha": self.alpha,
            "m_e": self.m_e,
            "hbar_eV_as": self.hbar_eV_as,
            "a0_pm": self.a0_pm,
            "a0_as": self.a0_as,
            "proton_radius_fm": self.proton_radius_fm,
        }


CONSTANTS = PhysicalConstants()

UNITS = {
    "alpha": "",
    "m_e": "eV",
    "hbar_eV_as": "eV*as",
    "a0_pm": "pm",
    "a0_as": "as",
    "proton_radius_fm": "fm",
}


def bohr_time(constants=CONSTANTS):
    """Light-travel time across the Bohr radius, ``1/(alpha m_e)``, in attoseconds."""
    return constants.hbar_eV_as / (constants.alpha * constants.m_e)


def _pairs(c):
    hbar = c.hbar_eV_as
    hbar_c = c.hbar_c_eV_pm
    # (from, to): forward map; the reverse is registered below
    return {
        ("eV", "as"): lambda v: hbar / v,
        ("as", "eV"): lambda v: hbar / v,
        ("eV", "pm"): lambda v: hbar_c / v,
        ("pm", "eV"): lambda v: hbar_c / v,
        ("pm", "as"): lambda v: v / C_PM_PER_AS,
        ("as", "pm"): lambda v: v * C_PM_PER_AS,
        ("fm", "ys"): lambda v: v / C_FM_PER_YS,
        ("ys", "fm"): lambda v: v * C_FM_PER_YS,
    }


def convert(value, from_unit, to_unit, *, uncertainty=False, constants=CONSTANTS):
    """Convert between the unit pairs used in the package.

    Supported pairs are eV<->as (via hbar), pm<->as (via c), eV<->pm (via
    hbar c) and fm<->ys (via c).  Energy/time and energy/length conversions
    are reciprocal.

    Parameters
    ----------
    value : float or array
    from_unit, to_unit : str
    uncertainty : bool
        Only meaningful for reciprocal pairs.  When set, the conversion pairs
        uncertainties through ``dE * dt = hbar/2`` instead of ``E t = hbar``,
        e.g. 27.2 eV -> 12.1 as.

    Raises
    ------
    UnitError
        If the pair is not supported.
    """
    if from_unit == to_unit:
        return value
    fn = _pairs(constants).get((from_unit, to_unit))
    if fn is None:
        raise UnitError(f"unsupported conversion {from_unit!r} -> {to_unit!r}")
    reciprocal = {from_unit, to_unit} in ({"eV", "as"}, {"eV", "pm"})
    if uncertainty:
        if not reciprocal:
            raise UnitError(f"uncertainty pairing is undefined for {from_unit}->{to_unit}")
        return fn(2 * value)
    return fn(value)
