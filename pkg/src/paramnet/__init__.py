"""Linear network simulator for parametric frequency-converting Josephson devices."""

__version__ = "0.1.0"

from .errors import (
    InfeasibleError,
    NumericalError,
    ParamnetError,
    SingularNetworkError,
    ValidationError,
)
from .wave import (
    PortLabel,
    ScatterMatrix,
    Tolerance,
    dagger,
    db_power,
    is_unitary,
    matmul,
    sub_block,
)
from .devices import CouplerParams, JpcParams, LineParams, SteppedFilterParams, jpc_rt
from .mpijis import MpijisParams, NoiseReport, added_noise, full_smatrix, full_smatrix_at
from .netgraph import Network, compose, compose_sweep, mpijis_network
from .qubit import CoherenceRecord, ReadoutParams

__all__ = [
    "CoherenceRecord",
    "CouplerParams",
    "InfeasibleError",
    "JpcParams",
    "LineParams",
    "MpijisParams",
    "Network",
    "NoiseReport",
    "NumericalError",
    "ParamnetError",
    "PortLabel",
    "ReadoutParams",
    "ScatterMatrix",
    "SingularNetworkError",
    "SteppedFilterParams",
    "Tolerance",
    "ValidationError",
    "added_noise",
    "compose",
    "compose_sweep",
    "dagger",
    "db_power",
    "full_smatrix",
    "full_smatrix_at",
    "is_unitary",
    "jpc_rt",
    "matmul",
    "mpijis_network",
    "sub_block",
]
