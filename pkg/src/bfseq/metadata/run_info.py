import hashlib
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Self

import orjson

from bfseq.__meta__ import version


@dataclass(frozen=True)
class RunInfo:
    """Provenance attached to machine-readable outputs.

    Attributes:
        tool_version: Version of bfseq that produced the output.
        design_name: Name of the design configuration.
        config_sha256: SHA-256 of the canonical JSON of the design configuration.
        seed: Seed used for randomized integration or simulation.
        command: Command that produced the output.
    """

    tool_version: str
    design_name: str
    config_sha256: str
    seed: int
    command: str

    @classmethod
    def for_config(
        cls, design_name: str, config: Mapping[str, object], seed: int, command: str
    ) -> Self:
        """Build run information from a serialized design configuration.

        The digest is taken over keys in sorted order so it does not depend on the
        layout of the source file.
        """
        canonical = orjson.dumps(config, option=orjson.OPT_SORT_KEYS)
        return cls(
            tool_version=version,
            design_name=design_name,
            config_sha256=hashlib.sha256(canonical).hexdigest(),
            seed=seed,
            command=command,
        )

    def asdict(self) -> Mapping[str, str | int]:
        return {
            "tool_version": self.tool_version,
            "design_name": self.design_name,
            "config_sha256": self.config_sha256,
            "seed": self.seed,
            "command": self.command,
        }
