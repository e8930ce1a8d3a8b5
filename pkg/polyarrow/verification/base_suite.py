import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List

from ..certificates import Certificate
from ..codec import encode_certificate, encode_value
from ..errors import CertificateError, HypothesisError, ToolkitError
from ..run_config import RunConfig
from .instances import InstanceGenerator


class BaseSuite(ABC):
    name: str = ""

    def __init__(self, config: RunConfig, logger: logging.Logger, strings: Dict[str, Any]):
        self.config = config
        self.logger = logger.getChild(self.__class__.__name__)
        self.strings = strings
        self.generator = InstanceGenerator(config.seed, config.max_dim, config.max_denom)

    @property
    def instance_count(self) -> int:
        return self.config.instances

    @abstractmethod
    def run_instance(self, index: int) -> Certificate:
        """
        Builds and checks one instance. The returned certificate decides pass/fail;
        CertificateError from a construction counts as a failure.
        """
        pass

    def parameters(self) -> Dict[str, Any]:
        return {"max_dim": self.config.max_dim, "max_denom": self.config.max_denom}

    def run(self) -> Dict[str, Any]:
        results: List[Dict[str, Any]] = []
        failed = []
        skipped = 0
        for index in range(self.instance_count):
            entry: Dict[str, Any] = {"index": index}
            try:
                cert = self.run_instance(index)
                entry["certificate"] = encode_certificate(cert)
                entry["passed"] = cert.passed
            except CertificateError as e:
                entry["error"] = e.message
                entry["passed"] = False
                if e.certificate is not None:
                    entry["certificate"] = encode_certificate(e.certificate)
            except HypothesisError as e:
                entry["skipped"] = e.message
                entry["passed"] = True
                skipped += 1
            except ToolkitError as e:
                entry["error"] = str(e)
                entry["passed"] = False
            if not entry["passed"]:
                failed.append(index)
                self.logger.warning(f"{self.name} instance {index} failed: {entry.get('error') or 'certificate checks'}")
            results.append(entry)
        self.logger.info(f"{self.name}: {len(results) - len(failed)}/{len(results)} passed, {skipped} skipped")
        return {
            "suite": self.name,
            "seed": self.config.seed,
            "parameters": encode_value(self.parameters()),
            "instances": results,
            "failed": failed,
            "skipped": skipped,
            "passed": not failed,
        }
