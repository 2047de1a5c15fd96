from .characterize import CharacterizationReport, CharacterizeConfig, characterize
from .seqcore import FiniteSequence, NormOracle, lp_norm
