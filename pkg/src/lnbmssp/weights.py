"""LND-style edge cost for a channel policy, plus hash-seeded perturbation."""

from __future__ import annotations

from dataclasses import dataclass

MASK64 = (1 << 64) - 1


class AmountNotAdmitted(ValueError):
    pass


@dataclass(frozen=True)
class WeightParams:
    risk_factor: float = 15e-9  # per msat per block of timelock
    perturb_epsilon: float = 1e-9
    attempt_cost_msat: int = 0

    def __post_init__(self):
        if self.risk_factor < 0:
            raise ValueError(f"risk_factor must be >= 0, got {self.risk_factor}")
        if not 0 <= self.perturb_epsilon < 1e-6:
            raise ValueError(f"perturb_epsilon must lie in [0, 1e-6), got {self.perturb_epsilon}")
        if self.attempt_cost_msat < 0:
            raise ValueError("attempt_cost_msat must be >= 0")


def admits(policy, amount_msat: int) -> bool:
    if policy.disabled:
        return False
    if policy.htlc_min_msat is not None and amount_msat < policy.htlc_min_msat:
        return False
    if policy.htlc_max_msat is not None and amount_msat > policy.htlc_max_msat:
        return False
    return True


def edge_weight(policy, amount_msat: int, params: WeightParams = WeightParams()) -> float:
    """fee + timelock penalty (+ optional fixed attempt cost), in msat."""
    if amount_msat <= 0:
        raise AmountNotAdmitted(f"amount must be positive, got {amount_msat}")
    if not admits(policy, amount_msat):
        raise AmountNotAdmitted(
            f"channel {policy.short_channel_id} does not admit {amount_msat} msat"
        )
    fee = policy.base_fee_msat + amount_msat * policy.fee_rate_ppm / 1_000_000
    timelock_penalty = amount_msat * policy.cltv_delta * params.risk_factor
    return fee + timelock_penalty + params.attempt_cost_msat


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def unit_hash(edge_id: int, seed: int) -> float:
    """Deterministic value in the open interval (0, 1) for an (edge_id, seed) pair."""
    h = splitmix64((edge_id & MASK64) ^ splitmix64(seed & MASK64))
    return ((h >> 11) + 0.5) / 9007199254740992.0  # 2**53


def perturb(w: float, edge_id: int, seed: int, epsilon: float = 1e-9) -> float:
    """Add a tiny, reproducible, per-edge offset so path lengths do not tie."""
    if w < 0:
        raise ValueError(f"weight must be >= 0, got {w}")
    if epsilon == 0:
        return w
    return w + epsilon * max(w, 1.0) * unit_hash(edge_id, seed)
