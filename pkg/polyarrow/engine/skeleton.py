import logging
from typing import Sequence

from ..arrows import DoubleArrow, Operator
from ..certificates import Certificate
from ..errors import CertificateError, SpaceMismatchError
from ..linalg import identity

logger = logging.getLogger(__name__)


def skeleton_check(chain: Sequence[DoubleArrow]) -> Certificate:
    """
    For a chain E_0 <-> E_1 <-> ... <-> E_n of (1, 0, 1)-arrows, checks that
    every composite projection E_n -> E_k has norm one and fixes E_k.
    """
    cert = Certificate("skeleton")
    for idx, link in enumerate(chain):
        if idx and chain[idx - 1].target != link.source:
            raise SpaceMismatchError(f"link {idx} starts at {link.source}, previous ends at {chain[idx - 1].target}")
        if not link.arrow_class.is_double:
            cert.check_true(f"link[{idx}]", False)
            raise CertificateError(f"link {idx} has class {link.arrow_class.as_tuple()}", cert)
    if not chain:
        return cert
    top = chain[-1].target
    norms = []
    for k in range(len(chain)):
        projection = Operator.identity(top)
        embedding = Operator.identity(chain[k].source)
        for link in chain[k:]:
            embedding = link.fwd @ embedding
        for link in reversed(chain[k:]):
            projection = link.back @ projection
        norms.append(projection.norm)
        cert.check_eq(f"norm[{k}]", projection.norm, 1)
        cert.check_identity(f"fixes[{k}]", (projection @ embedding).matrix, identity(chain[k].source.dim))
    cert.record("norms", norms)
    logger.debug(f"Skeleton of length {len(chain)}: projection norms {norms}")
    return cert
