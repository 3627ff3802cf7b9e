"""Single-photon frequency conversion by a driven five-level emitter in a Sagnac loop."""

from . import oracle
from .errors import (DegenerateSystemError, ParameterError, PoleError, SPFCError,
                     UndefinedFidelityError)
from .params import InputPhoton, LevelDiagram, SystemParams
from .scattering import AmplitudePair, amplitudes, metrics

__all__ = ["oracle", "SystemParams", "InputPhoton", "LevelDiagram", "AmplitudePair",
           "amplitudes", "metrics", "SPFCError", "ParameterError", "PoleError",
           "UndefinedFidelityError", "DegenerateSystemError"]
