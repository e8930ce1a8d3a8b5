from .pushout import PushoutResult, pushout, factor, pushout_retraction
from .complemented import ComplementedPushout, MultiPushout, complemented_pushout, multi_pushout_extension
from .correction import CorrectionSpace, correction_space, correction_factor, correction_double

__all__ = [
    "PushoutResult", "pushout", "factor", "pushout_retraction", "ComplementedPushout",
    "MultiPushout", "complemented_pushout", "multi_pushout_extension", "CorrectionSpace",
    "correction_space", "correction_factor", "correction_double",
]
