from dataclasses import dataclass

from bfseq.errors import ConfigError


@dataclass(frozen=True)
class SimConfig:
    """Settings of a Monte Carlo run.

    Attributes:
        n_replications: Number of simulated trials, at least 1.
        seed: Root seed; every chunk draws from its own child stream.
        chunk_size: Replications generated per vectorized batch.
    """

    n_replications: int = 100_000
    seed: int = 0
    chunk_size: int = 10_000

    def __post_init__(self) -> None:
        if self.n_replications < 1:
            msg = f"n_replications must be at least 1, got {self.n_replications}"
            raise ConfigError(msg)
        if self.seed < 0:
            msg = f"seed must be non-negative, got {self.seed}"
            raise ConfigError(msg)
        if self.chunk_size < 1:
            msg = f"chunk_size must be at least 1, got {self.chunk_size}"
            raise ConfigError(msg)
