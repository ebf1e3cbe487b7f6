"""Function spaces on the unit disk: integral means, Bloch-type norms and checks."""
from .compop import SelfMap, boundedness_verdict, criterion_integral, g_function
from .errors import *  # noqa: F401,F403
from .functions import (DiskFunction, GapSeries, HarmonicPair, Lacunary, NumericWrapper,
                        PowerSeries, YukawaExp, construct)
from .majorants import BlochParams, Majorant, eta, parse_majorant
from .norms import (NormValue, SupSearchConfig, bloch_norm, dirichlet_norm, hardy_norm,
                    lipschitz_quotient_sup, little_bloch_limit, mean_oscillation)
from .quadrature import (IntegralResult, QuadratureConfig, circle_mean, disk_integral,
                         radial_improper_integral)
from .reports import Report, TheoremReport, Verdict

__version__ = "0.1.0"
