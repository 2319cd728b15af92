from .angerweber import AngerWeberApi
from .lommel import LommelApi
from .neumann import NeumannApi
from .scorer import ScorerApi
from .struve import StruveApi

__all__ = ["AngerWeberApi", "LommelApi", "NeumannApi", "ScorerApi", "StruveApi"]
