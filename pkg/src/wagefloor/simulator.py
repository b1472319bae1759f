"""Discrete-time annual stepping engine for minimum-wage policy rules.

Each step, in order: per-capita GDP grows by the real rate and the price
level by the inflation rate (nominal GDP per capita compounds both); the
policy rule proposes the next floor; if the floor rises the distribution
compresses upward and a share of the wage-bill increase passes through to
the price level; the high-productivity employment share ratchets up while
high-productivity production is the cheaper transform; hours per capita
never move (long-run employment neutrality); the Gini proxy is recomputed
from the wage bins.

Nominal wages never fall. Falling ratios ("sag") arise only when GDP per
capita outgrows the nominal floor.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from enum import Enum

from .model import (
    HOURS_PER_YEAR,
    CompensationBreakdown,
    CompressionParams,
    DomainError,
    HorizonSide,
    TransformUnit,
    WageDistribution,
    compress,
    horizon_side,
    t_mean_from_wage,
)


class ConvergenceError(RuntimeError):
    """Fixed-point iteration failed to settle within the iteration budget."""


class InvalidActionError(DomainError):
    """An explicitly supplied floor action cannot be applied."""


class SimulationError(RuntimeError):
    """A step failed; carries the 1-based step index."""

    def __init__(self, step_index: int, message: str):
        self.step_index = step_index
        super().__init__(f"step {step_index}: {message}")


class RuleKind(Enum):
    FIXED_NOMINAL = "fixed-nominal"
    CPI_INDEXED = "cpi-indexed"
    KAITZ_INDEXED = "kaitz-indexed"
    GDPC_INDEXED = "gdpc-indexed"
    GDPC_RAMP = "gdpc-ramp"
    MANUAL = "manual"


@dataclass(frozen=True)
class ManualAction:
    """Externally supplied floor for one step: a nominal hourly value or a
    ratio converted against next-period GDP per capita at apply time."""

    ratio: float | None = None
    floor: float | None = None

    def __post_init__(self):
        given = [v for v in (self.ratio, self.floor) if v is not None]
        if len(given) != 1:
            raise DomainError("manual action needs exactly one of ratio or floor")
        value = given[0]
        if not (math.isfinite(value) and value > 0.0):
            raise DomainError(f"manual action value must be positive, got {value!r}")


@dataclass(frozen=True)
class PolicyRule:
    kind: RuleKind
    target: float | None = None
    annual_increment: float | None = None
    schedule: tuple[ManualAction, ...] = ()

    def __post_init__(self):
        needs_target = self.kind in (RuleKind.KAITZ_INDEXED, RuleKind.GDPC_INDEXED,
                                     RuleKind.GDPC_RAMP)
        if needs_target:
            if self.target is None or not 0.0 < self.target <= 1.2:
                raise DomainError(
                    f"{self.kind.value} target must lie in (0, 1.2], got {self.target!r}")
        if self.kind is RuleKind.GDPC_RAMP:
            if self.annual_increment is None or not self.annual_increment > 0.0:
                raise DomainError("gdpc-ramp needs annual_increment > 0")
        if self.schedule and self.kind is not RuleKind.MANUAL:
            raise DomainError("only manual rules carry a schedule")


@dataclass(frozen=True)
class EconomyState:
    t: int
    gdp_per_capita: float
    dist: WageDistribution
    hours_per_capita: float
    price_level: float
    high_productivity_share: float
    gini_proxy: float

    def __post_init__(self):
        for name in ("gdp_per_capita", "hours_per_capita", "price_level"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be positive, got {value!r}")
        if not 0.0 <= self.high_productivity_share <= 1.0:
            raise DomainError("high_productivity_share must lie in [0, 1]")

    @classmethod
    def initial(cls, gdp_per_capita: float, dist: WageDistribution,
                hours_per_capita: float, price_level: float = 1.0,
                high_productivity_share: float = 0.5) -> "EconomyState":
        return cls(
            t=0,
            gdp_per_capita=gdp_per_capita,
            dist=dist,
            hours_per_capita=hours_per_capita,
            price_level=price_level,
            high_productivity_share=high_productivity_share,
            gini_proxy=dist.gini(),
        )


@dataclass(frozen=True)
class StepRecord:
    t: int
    nominal_min: float
    w_min: float
    w_mean: float
    labor_share: float
    price_level: float
    high_productivity_share: float
    gini_proxy: float

    def __post_init__(self):
        if self.w_min > self.w_mean:
            raise DomainError(f"w_min exceeds w_mean at t={self.t}")


RECORD_COLUMNS = ("t", "nominal_min", "w_min", "w_mean", "labor_share",
                  "price_level", "high_productivity_share", "gini_proxy")


def _default_transform_pair(gdppc: float, floor: float) -> tuple[TransformUnit, TransformUnit]:
    # Low-productivity unit: two labor hours plus modest embedded costs.
    # High-productivity unit: one better-paid hour plus more capital services.
    # Crossing sits above the starting floor so raises can push across.
    scale = gdppc / 65000.0
    low = TransformUnit(2.0, floor, 10.0 * scale)
    high = TransformUnit(1.0, 20.0 * scale, 8.0 * scale)
    return low, high


@dataclass(frozen=True)
class ScenarioConfig:
    initial: EconomyState
    rule: PolicyRule
    real_growth_rate: float
    inflation_rate: float
    compression: CompressionParams
    passthrough_alpha: float
    steps: int
    seed: int = 0
    breakdown: CompensationBreakdown = field(default_factory=CompensationBreakdown)
    transform_low: TransformUnit | None = None
    transform_high: TransformUnit | None = None
    productivity_step: float = 0.01

    def __post_init__(self):
        for name in ("real_growth_rate", "inflation_rate"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if not 0.0 <= self.passthrough_alpha <= 1.0:
            raise DomainError("passthrough_alpha must lie in [0, 1]")
        if self.steps < 1:
            raise DomainError("steps must be at least 1")
        if not self.productivity_step > 0.0:
            raise DomainError("productivity_step must be positive")
        if (self.transform_low is None) != (self.transform_high is None):
            raise DomainError("transform units must be given as a pair")
        if self.transform_low is None:
            low, high = _default_transform_pair(
                self.initial.gdp_per_capita, self.initial.dist.min_wage)
            object.__setattr__(self, "transform_low", low)
            object.__setattr__(self, "transform_high", high)


# ---------------------------------------------------------------------------
# Stepping
# ---------------------------------------------------------------------------

def policy_floor(rule: PolicyRule, state: EconomyState, next_gdppc: float,
                 next_price: float, manual: float | None = None) -> float:
    """Nominal hourly floor the rule prescribes for the coming year."""
    current = state.dist.min_wage
    if rule.kind is RuleKind.FIXED_NOMINAL:
        return current
    if rule.kind is RuleKind.CPI_INDEXED:
        return current * (next_price / state.price_level)
    if rule.kind is RuleKind.KAITZ_INDEXED:
        return rule.target * state.dist.median()
    if rule.kind is RuleKind.GDPC_INDEXED:
        return rule.target * next_gdppc / HOURS_PER_YEAR
    if rule.kind is RuleKind.GDPC_RAMP:
        current_ratio = current * HOURS_PER_YEAR / state.gdp_per_capita
        ratio = min(current_ratio + rule.annual_increment, rule.target)
        return ratio * next_gdppc / HOURS_PER_YEAR
    if rule.kind is RuleKind.MANUAL:
        if manual is None:
            raise DomainError("manual rule requires a supplied floor")
        return manual
    raise DomainError(f"unhandled rule kind {rule.kind!r}")


def snapshot(state: EconomyState, config: ScenarioConfig) -> StepRecord:
    """Record of the state as it stands, without stepping."""
    mean_hourly = state.dist.mean()
    w_mean_ratio = mean_hourly * HOURS_PER_YEAR / state.gdp_per_capita
    share = t_mean_from_wage(mean_hourly / state.gdp_per_capita,
                             config.breakdown) * state.hours_per_capita
    return StepRecord(
        t=state.t,
        nominal_min=state.dist.min_wage,
        w_min=state.dist.min_wage * HOURS_PER_YEAR / state.gdp_per_capita,
        w_mean=w_mean_ratio,
        labor_share=share,
        price_level=state.price_level,
        high_productivity_share=state.high_productivity_share,
        gini_proxy=state.gini_proxy,
    )


def step(state: EconomyState, config: ScenarioConfig,
         action: ManualAction | None = None) -> tuple[EconomyState, StepRecord]:
    """Advance one year; returns the new state and its history row."""
    next_gdppc = (state.gdp_per_capita
                  * (1.0 + config.real_growth_rate)
                  * (1.0 + config.inflation_rate))
    next_price = state.price_level * (1.0 + config.inflation_rate)

    manual_floor = None
    if config.rule.kind is RuleKind.MANUAL or action is not None:
        if action is None:
            manual_floor = state.dist.min_wage  # hold nominal when unsteered
        elif action.floor is not None:
            manual_floor = action.floor
        else:
            manual_floor = action.ratio * next_gdppc / HOURS_PER_YEAR
    if action is not None:
        current = state.dist.min_wage
        if manual_floor < current and not math.isclose(manual_floor, current,
                                                       rel_tol=1e-12):
            raise InvalidActionError(
                f"supplied floor {manual_floor!r} is below the current "
                f"minimum {current!r}")
    if action is not None and config.rule.kind is not RuleKind.MANUAL:
        floor = manual_floor  # board override of an indexed rule
    else:
        floor = policy_floor(config.rule, state, next_gdppc, next_price,
                             manual=manual_floor)

    dist = state.dist
    if floor > dist.min_wage:
        new_dist = compress(dist, floor, config.compression, next_gdppc)
        delta_bill = new_dist.bill() - dist.bill()
        gdp_proxy = next_gdppc * dist.total_mass / state.hours_per_capita
        next_price *= 1.0 + config.passthrough_alpha * delta_bill / gdp_proxy
    else:
        new_dist = dist

    share = state.high_productivity_share
    scale = next_gdppc / config.initial.gdp_per_capita
    low = TransformUnit(
        config.transform_low.labor_hours_per_unit,
        new_dist.min_wage,
        config.transform_low.non_labor_cost_per_unit * scale,
    )
    high = TransformUnit(
        config.transform_high.labor_hours_per_unit,
        config.transform_high.hourly_wage * scale,
        config.transform_high.non_labor_cost_per_unit * scale,
    )
    if horizon_side(low, high) is HorizonSide.HIGH_CHEAPER:
        share = min(1.0, share + config.productivity_step)

    new_state = EconomyState(
        t=state.t + 1,
        gdp_per_capita=next_gdppc,
        dist=new_dist,
        hours_per_capita=state.hours_per_capita,
        price_level=next_price,
        high_productivity_share=share,
        gini_proxy=new_dist.gini(),
    )
    return new_state, snapshot(new_state, config)


def run(config: ScenarioConfig) -> list[StepRecord]:
    """Run the configured number of steps; aborts on the first failure."""
    state = config.initial
    schedule = config.rule.schedule
    records = []
    for i in range(config.steps):
        action = schedule[i] if i < len(schedule) else None
        try:
            state, record = step(state, config, action)
        except (DomainError, ValueError) as exc:
            raise SimulationError(i + 1, str(exc)) from exc
        records.append(record)
    return records


# ---------------------------------------------------------------------------
# Fixed point of the compression response
# ---------------------------------------------------------------------------

def fixed_point_wmean(target_wmin: float, compression: CompressionParams,
                      dist0: WageDistribution, growth_factor: float = 1.0,
                      max_iter: int = 10_000, tol: float = 1e-12) -> float:
    """Stationary mean-wage ratio under a pinned floor ratio.

    ``dist0`` is read in annualized-ratio space (bin wage = annual wage over
    per-capita GDP). Each iteration dilutes every ratio by ``growth_factor``
    (nominal growth with sticky nominal wages) and then restores the floor
    to ``target_wmin`` through the compression kernel. With the default
    ``growth_factor`` of 1 there is no dilution and the map is stationary
    after a single application.
    """
    if not (math.isfinite(target_wmin) and target_wmin > 0.0):
        raise DomainError(f"target must be positive, got {target_wmin!r}")
    if target_wmin >= compression.ceiling_ratio:
        raise DomainError("target must sit below the compression ceiling")
    if growth_factor < 1.0:
        raise DomainError("growth_factor must be >= 1")

    dist = dist0
    prev = dist.mean()
    for _ in range(max_iter):
        wages = dist.wages / growth_factor if growth_factor != 1.0 else dist.wages
        diluted = WageDistribution(wages, dist.masses)
        if target_wmin > diluted.min_wage:
            # The ceiling ratio maps to itself when gdppc is one annual-hour
            # unit, so ratio-space distributions reuse the nominal kernel.
            dist = compress(diluted, target_wmin, compression, HOURS_PER_YEAR)
        else:
            dist = diluted
        current = dist.mean()
        if abs(current - prev) <= tol:
            return current
        prev = current
    raise ConvergenceError(
        f"no fixed point within {max_iter} iterations (last delta "
        f"{abs(current - prev)!r})")


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def _ratio_distribution(gdppc: float, ratios: list[float],
                        masses: list[float]) -> WageDistribution:
    hourly = [r * gdppc / HOURS_PER_YEAR for r in ratios]
    return WageDistribution(hourly, masses)


def hungary_scenario() -> ScenarioConfig:
    """Two-year doubling episode: the floor ratio climbs 0.406 -> 0.606.

    Three quarters of the wage-bill increase passes through to prices;
    the remaining quarter moves from profits into the labor share.
    """
    gdppc = 753_695.0
    dist = _ratio_distribution(
        gdppc,
        [0.406, 0.45, 0.50, 0.56, 0.63, 0.71, 0.80, 0.90, 1.00, 1.12, 1.26],
        [8.0, 9.0, 10.0, 9.5, 8.5, 7.0, 5.5, 4.0, 3.0, 2.0, 1.0],
    )
    initial = EconomyState.initial(gdppc, dist, hours_per_capita=900.0)
    rule = PolicyRule(
        kind=RuleKind.MANUAL,
        schedule=(ManualAction(ratio=0.52), ManualAction(ratio=0.606)),
    )
    return ScenarioConfig(
        initial=initial,
        rule=rule,
        real_growth_rate=0.045,
        inflation_rate=0.05,
        compression=CompressionParams(ceiling_ratio=1.0),
        passthrough_alpha=0.75,
        steps=2,
    )


def _us_initial() -> EconomyState:
    gdppc = 65_000.0
    dist = WageDistribution(
        [7.25, 8.5, 10.0, 12.0, 14.5, 17.5, 21.0, 25.0, 30.0, 36.0, 43.0, 52.0, 62.0],
        [4.0, 6.0, 8.0, 9.0, 10.0, 9.0, 8.0, 7.0, 6.0, 5.0, 4.0, 3.0, 2.0],
    )
    return EconomyState.initial(gdppc, dist, hours_per_capita=850.0)


def us_baseline_scenario() -> ScenarioConfig:
    """Status quo: nominal floor frozen while the economy grows."""
    return ScenarioConfig(
        initial=_us_initial(),
        rule=PolicyRule(kind=RuleKind.FIXED_NOMINAL),
        real_growth_rate=0.02,
        inflation_rate=0.02,
        compression=CompressionParams(ceiling_ratio=1.0),
        passthrough_alpha=0.75,
        steps=30,
    )


def us_fixed_nominal_scenario() -> ScenarioConfig:
    """Frozen nominal floor with 2% real growth and no inflation, so the
    floor ratio decays geometrically at exactly 1.02 per year."""
    return ScenarioConfig(
        initial=_us_initial(),
        rule=PolicyRule(kind=RuleKind.FIXED_NOMINAL),
        real_growth_rate=0.02,
        inflation_rate=0.0,
        compression=CompressionParams(ceiling_ratio=1.0),
        passthrough_alpha=0.75,
        steps=30,
    )


def gdpc_two_thirds_scenario() -> ScenarioConfig:
    """Ramp the floor ratio by 0.025 per year until it reaches two thirds."""
    return ScenarioConfig(
        initial=_us_initial(),
        rule=PolicyRule(kind=RuleKind.GDPC_RAMP, target=2.0 / 3.0,
                        annual_increment=0.025),
        real_growth_rate=0.02,
        inflation_rate=0.02,
        compression=CompressionParams(ceiling_ratio=1.0),
        passthrough_alpha=0.75,
        steps=40,
    )


PRESETS = {
    "hungary": hungary_scenario,
    "us-baseline": us_baseline_scenario,
    "us-fixed-nominal": us_fixed_nominal_scenario,
    "gdpc-two-thirds": gdpc_two_thirds_scenario,
}


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

class PayloadError(ValueError):
    """Config payload problems as (field path, message) pairs."""

    def __init__(self, problems: list[tuple[str, str]]):
        self.problems = list(problems)
        super().__init__("; ".join(f"{f}: {m}" for f, m in problems))


def record_to_dict(record: StepRecord) -> dict:
    return {col: getattr(record, col) for col in RECORD_COLUMNS}


def record_from_dict(data: dict) -> StepRecord:
    return StepRecord(**{col: data[col] for col in RECORD_COLUMNS})


def history_to_csv(records: list[StepRecord]) -> str:
    """Canonical CSV serialization of a history, identical across interfaces."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RECORD_COLUMNS)
    for record in records:
        writer.writerow([record.t] + [repr(float(getattr(record, col)))
                                      for col in RECORD_COLUMNS[1:]])
    return buf.getvalue()


def config_to_payload(config: ScenarioConfig) -> dict:
    """Plain-dict form of a config; the service payload and the scenario
    file share this schema exactly."""
    state = config.initial
    rule: dict = {"kind": config.rule.kind.value}
    if config.rule.target is not None:
        rule["target"] = config.rule.target
    if config.rule.annual_increment is not None:
        rule["annual_increment"] = config.rule.annual_increment
    if config.rule.schedule:
        rule["schedule"] = [
            {"ratio": a.ratio} if a.ratio is not None else {"floor": a.floor}
            for a in config.rule.schedule
        ]
    return {
        "initial": {
            "gdp_per_capita": state.gdp_per_capita,
            "hours_per_capita": state.hours_per_capita,
            "price_level": state.price_level,
            "high_productivity_share": state.high_productivity_share,
            "distribution": {
                "wages": [float(w) for w in state.dist.wages],
                "masses": [float(m) for m in state.dist.masses],
            },
        },
        "rule": rule,
        "real_growth_rate": config.real_growth_rate,
        "inflation_rate": config.inflation_rate,
        "compression": {
            "ceiling_ratio": config.compression.ceiling_ratio,
            "kernel": config.compression.kernel,
        },
        "passthrough_alpha": config.passthrough_alpha,
        "steps": config.steps,
        "seed": config.seed,
        "breakdown": {
            "wage_share": config.breakdown.wage_share,
            "health_insurance_share": config.breakdown.health_insurance_share,
            "social_insurance_share": config.breakdown.social_insurance_share,
            "other_share": config.breakdown.other_share,
        },
        "transform": {
            "low": {
                "labor_hours_per_unit": config.transform_low.labor_hours_per_unit,
                "non_labor_cost_per_unit": config.transform_low.non_labor_cost_per_unit,
            },
            "high": {
                "labor_hours_per_unit": config.transform_high.labor_hours_per_unit,
                "hourly_wage": config.transform_high.hourly_wage,
                "non_labor_cost_per_unit": config.transform_high.non_labor_cost_per_unit,
            },
        },
        "productivity_step": config.productivity_step,
    }


def _expect(payload: dict, key: str, kind, problems: list, path: str,
            required: bool = True, default=None):
    if key not in payload:
        if required:
            problems.append((f"{path}{key}", "missing"))
        return default
    value = payload[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            problems.append((f"{path}{key}", "must be a number"))
            return default
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            problems.append((f"{path}{key}", "must be an integer"))
            return default
        return value
    if kind is dict and not isinstance(value, dict):
        problems.append((f"{path}{key}", "must be an object"))
        return default
    if kind is list and not isinstance(value, list):
        problems.append((f"{path}{key}", "must be an array"))
        return default
    if kind is str and not isinstance(value, str):
        problems.append((f"{path}{key}", "must be a string"))
        return default
    return value


def config_from_payload(payload: dict) -> ScenarioConfig:
    """Parse and validate a scenario payload; raises PayloadError with
    field-level messages on any problem."""
    problems: list[tuple[str, str]] = []
    if not isinstance(payload, dict):
        raise PayloadError([("", "payload must be an object")])

    initial = _expect(payload, "initial", dict, problems, "")
    rule_data = _expect(payload, "rule", dict, problems, "")
    real_growth = _expect(payload, "real_growth_rate", float, problems, "")
    inflation = _expect(payload, "inflation_rate", float, problems, "")
    steps = _expect(payload, "steps", int, problems, "")
    alpha = _expect(payload, "passthrough_alpha", float, problems, "")
    seed = _expect(payload, "seed", int, problems, "", required=False, default=0)
    comp_data = _expect(payload, "compression", dict, problems, "",
                        required=False, default={})
    breakdown_data = _expect(payload, "breakdown", dict, problems, "",
                             required=False, default=None)
    transform_data = _expect(payload, "transform", dict, problems, "",
                             required=False, default=None)
    productivity_step = _expect(payload, "productivity_step", float, problems, "",
                                required=False, default=0.01)
    if problems:
        raise PayloadError(problems)

    state = None
    gdppc = _expect(initial, "gdp_per_capita", float, problems, "initial.")
    hours = _expect(initial, "hours_per_capita", float, problems, "initial.")
    price = _expect(initial, "price_level", float, problems, "initial.",
                    required=False, default=1.0)
    hp_share = _expect(initial, "high_productivity_share", float, problems,
                       "initial.", required=False, default=0.5)
    dist_data = _expect(initial, "distribution", dict, problems, "initial.")
    dist = None
    if dist_data is not None:
        wages = _expect(dist_data, "wages", list, problems, "initial.distribution.")
        masses = _expect(dist_data, "masses", list, problems, "initial.distribution.")
        if wages is not None and masses is not None:
            try:
                dist = WageDistribution(wages, masses)
            except (DomainError, TypeError) as exc:
                problems.append(("initial.distribution", str(exc)))
    if not problems and dist is not None:
        try:
            state = EconomyState.initial(gdppc, dist, hours, price, hp_share)
        except DomainError as exc:
            problems.append(("initial", str(exc)))

    rule = None
    kind_name = _expect(rule_data, "kind", str, problems, "rule.")
    if kind_name is not None:
        try:
            kind = RuleKind(kind_name)
        except ValueError:
            valid = ", ".join(k.value for k in RuleKind)
            problems.append(("rule.kind", f"unknown kind {kind_name!r}; valid: {valid}"))
            kind = None
        if kind is not None:
            target = _expect(rule_data, "target", float, problems, "rule.",
                             required=False)
            increment = _expect(rule_data, "annual_increment", float, problems,
                                "rule.", required=False)
            schedule_data = _expect(rule_data, "schedule", list, problems, "rule.",
                                    required=False, default=[])
            schedule = []
            for i, entry in enumerate(schedule_data or []):
                if not isinstance(entry, dict):
                    problems.append((f"rule.schedule[{i}]", "must be an object"))
                    continue
                try:
                    schedule.append(ManualAction(
                        ratio=entry.get("ratio"), floor=entry.get("floor")))
                except DomainError as exc:
                    problems.append((f"rule.schedule[{i}]", str(exc)))
            if not problems:
                try:
                    rule = PolicyRule(kind=kind, target=target,
                                      annual_increment=increment,
                                      schedule=tuple(schedule))
                except DomainError as exc:
                    problems.append(("rule", str(exc)))

    compression = None
    try:
        compression = CompressionParams(
            ceiling_ratio=float(comp_data.get("ceiling_ratio", 1.0)),
            kernel=comp_data.get("kernel", "linear"),
        )
    except (DomainError, TypeError, ValueError) as exc:
        problems.append(("compression", str(exc)))

    breakdown = CompensationBreakdown()
    if breakdown_data is not None:
        try:
            breakdown = CompensationBreakdown(**{
                k: float(breakdown_data[k]) for k in (
                    "wage_share", "health_insurance_share",
                    "social_insurance_share", "other_share")
            })
        except (DomainError, KeyError, TypeError, ValueError) as exc:
            problems.append(("breakdown", repr(exc)))

    low = high = None
    if transform_data is not None:
        try:
            low_d = transform_data["low"]
            high_d = transform_data["high"]
            low = TransformUnit(
                float(low_d["labor_hours_per_unit"]),
                state.dist.min_wage if state is not None else 0.0,
                float(low_d["non_labor_cost_per_unit"]),
            )
            high = TransformUnit(
                float(high_d["labor_hours_per_unit"]),
                float(high_d["hourly_wage"]),
                float(high_d["non_labor_cost_per_unit"]),
            )
        except (DomainError, KeyError, TypeError, ValueError) as exc:
            problems.append(("transform", repr(exc)))

    if problems:
        raise PayloadError(problems)
    try:
        return ScenarioConfig(
            initial=state,
            rule=rule,
            real_growth_rate=real_growth,
            inflation_rate=inflation,
            compression=compression,
            passthrough_alpha=alpha,
            steps=steps,
            seed=seed,
            breakdown=breakdown,
            transform_low=low,
            transform_high=high,
            productivity_step=productivity_step,
        )
    except DomainError as exc:
        raise PayloadError([("config", str(exc))]) from exc
