"""Architecture and adapter configuration."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ConfigError

VARIANTS = ("surf", "coef")

# Named sizes: initial hidden dimension per scale tier.
SIZE_HIDDEN = {"S": 16, "M": 32, "L": 64}


@dataclass
class ModelConfig:
    """Hyperparameters of the hierarchical windowed-attention surrogate."""

    hidden0: int = 16
    depths: tuple[int, ...] = (2, 5, 8, 5, 2)
    patch: tuple[int, int] = (4, 4)
    window: int = 8
    heads: int = 8
    mlp_ratio: int = 4
    n_var: int = 3
    n_cond: int = 2
    variant: str = "surf"

    def __post_init__(self):
        self.depths = tuple(int(d) for d in self.depths)
        self.patch = (int(self.patch[0]), int(self.patch[1]))
        if self.variant not in VARIANTS:
            raise ConfigError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if len(self.depths) % 2 == 0 or not self.depths:
            raise ConfigError("stage depths must have odd length")
        if self.variant == "surf" and self.depths != self.depths[::-1]:
            raise ConfigError("surf variant needs depths symmetric around the latent stage")
        for dim in self.stage_dims:
            if dim % self.heads:
                raise ConfigError(f"stage dim {dim} not divisible by {self.heads} heads")

    @property
    def n_stages(self) -> int:
        return len(self.depths)

    @property
    def n_down(self) -> int:
        return self.n_stages // 2

    @property
    def stage_dims(self) -> tuple[int, ...]:
        n = self.n_stages
        return tuple(self.hidden0 * 2 ** min(s, n - 1 - s) for s in range(n))

    @property
    def encoder_stages(self) -> int:
        """Stages used by the coef variant: down-sampling plus latent."""
        return self.n_down + 1

    @property
    def cond_dim(self) -> int:
        return 4 * self.hidden0

    def token_downscale(self) -> int:
        """Total spatial reduction from input to the latent token grid."""
        return self.patch[0] * 2**self.n_down

    @classmethod
    def size(cls, name: str, variant: str = "surf") -> "ModelConfig":
        if name not in SIZE_HIDDEN:
            raise ConfigError(f"unknown size {name!r}; expected one of {sorted(SIZE_HIDDEN)}")
        return cls(hidden0=SIZE_HIDDEN[name], variant=variant)

    def to_json(self) -> dict:
        return {
            "hidden0": self.hidden0,
            "depths": list(self.depths),
            "patch": list(self.patch),
            "window": self.window,
            "heads": self.heads,
            "mlp_ratio": self.mlp_ratio,
            "n_var": self.n_var,
            "n_cond": self.n_cond,
            "variant": self.variant,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ModelConfig":
        return cls(
            hidden0=int(obj["hidden0"]),
            depths=tuple(obj["depths"]),
            patch=tuple(obj["patch"]),
            window=int(obj["window"]),
            heads=int(obj["heads"]),
            mlp_ratio=int(obj["mlp_ratio"]),
            n_var=int(obj["n_var"]),
            n_cond=int(obj["n_cond"]),
            variant=str(obj["variant"]),
        )


@dataclass
class LoRAConfig:
    """Low-rank adapter settings; targets are fixed to the query/value projections."""

    rank: int = 4
    alpha: float | None = None  # defaults to 2 * rank

    def __post_init__(self):
        if self.rank < 1:
            raise ConfigError(f"rank must be >= 1, got {self.rank}")
        if self.alpha is None:
            self.alpha = 2.0 * self.rank

    @property
    def scale(self) -> float:
        return self.alpha / self.rank
