"""Weapon categories, aim actions, armory defaults and priority selection."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .encoder import DistanceBand
from .learner import LearnerConfig, QTable, QTableSet


class WeaponCategory(enum.Enum):
    INSTANT_HIT = "InstantHit"
    MACHINE_GUN = "MachineGun"
    PROJECTILE = "Projectile"
    SLOW_MOVING = "SlowMoving"
    CLOSE_RANGE = "CloseRange"
    OTHER = "Other"


CATEGORY_ORDER = tuple(WeaponCategory)

# Five aim actions per weapon category, in Q-table action order.
ACTION_LABELS: dict[WeaponCategory, tuple[str, ...]] = {
    WeaponCategory.INSTANT_HIT: ("Head", "Mid", "Legs", "Left", "Right"),
    WeaponCategory.MACHINE_GUN: ("Player", "Location", "Head", "Left", "Right"),
    WeaponCategory.PROJECTILE: ("Player", "Location", "Above", "Above-2", "Above-3"),
    WeaponCategory.SLOW_MOVING: ("Player", "Left", "Left-2", "Right", "Right-2"),
    WeaponCategory.CLOSE_RANGE: ("Head", "Mid", "Legs", "Left", "Right"),
    WeaponCategory.OTHER: ("Head", "Mid", "Legs", "Left", "Right"),
}

# Collision cylinder of a player model: 34 UU wide, 39 UU tall.
CYLINDER_RADIUS = 17.0
CYLINDER_HEIGHT = 39.0
HEAD_Z = 39.0
MID_Z = 19.5
LEGS_Z = 4.0


@dataclass(frozen=True)
class ShootAction:
    category: WeaponCategory
    index: int
    label: str


def actions_for(category: WeaponCategory) -> list[ShootAction]:
    """The category's five aim actions in Q-table order."""
    labels = ACTION_LABELS[category]
    return [ShootAction(category, i, label) for i, label in enumerate(labels)]


@dataclass(frozen=True)
class WeaponSpec:
    name: str
    category: WeaponCategory
    damage_per_hit: float
    fire_interval: float
    instant_hit: bool = False
    projectile_speed: float = math.inf
    splash_radius: float = 0.0
    self_damage: bool = False
    aim_skew: float = 80.0
    above_step: float = 120.0
    pellets: int = 1
    spread_deg: float = 0.0
    melee_range: float = 0.0

    def __post_init__(self) -> None:
        if self.damage_per_hit <= 0:
            raise ValueError("damage_per_hit must be > 0")
        if self.fire_interval <= 0:
            raise ValueError("fire_interval must be > 0")
        if self.splash_radius < 0:
            raise ValueError("splash_radius must be >= 0")

    @property
    def is_hitscan(self) -> bool:
        return math.isinf(self.projectile_speed)


ASSAULT_RIFLE = "assault_rifle"
SHIELD_GUN = "shield_gun"


def default_armory() -> dict[str, WeaponSpec]:
    """Representative UT-style armory; every number is overridable in config."""
    specs = [
        WeaponSpec(ASSAULT_RIFLE, WeaponCategory.MACHINE_GUN, 7, 0.11, instant_hit=True, spread_deg=2.5),
        WeaponSpec("mini_gun", WeaponCategory.MACHINE_GUN, 8, 0.10, instant_hit=True, spread_deg=3.5),
        WeaponSpec("shock_rifle", WeaponCategory.INSTANT_HIT, 45, 0.6, instant_hit=True, spread_deg=1.5),
        WeaponSpec("lightning_gun", WeaponCategory.INSTANT_HIT, 70, 1.2, instant_hit=True, spread_deg=1.0),
        WeaponSpec("sniper_rifle", WeaponCategory.INSTANT_HIT, 60, 1.1, instant_hit=True, spread_deg=1.0),
        WeaponSpec(
            "bio_rifle", WeaponCategory.PROJECTILE, 25, 0.4,
            projectile_speed=700, splash_radius=60, self_damage=True,
        ),
        WeaponSpec(
            "flak_cannon_alt", WeaponCategory.PROJECTILE, 50, 0.9,
            projectile_speed=800, splash_radius=120, self_damage=True,
        ),
        WeaponSpec(
            "rocket_launcher", WeaponCategory.SLOW_MOVING, 60, 0.95,
            projectile_speed=1000, splash_radius=150, self_damage=True, aim_skew=60,
        ),
        WeaponSpec(
            "link_gun", WeaponCategory.SLOW_MOVING, 20, 0.25,
            projectile_speed=1200, aim_skew=60,
        ),
        WeaponSpec(
            "flak_cannon", WeaponCategory.CLOSE_RANGE, 12, 0.9,
            pellets=9, spread_deg=6.0,
        ),
        WeaponSpec(SHIELD_GUN, WeaponCategory.CLOSE_RANGE, 25, 0.8, melee_range=120),
    ]
    return {spec.name: spec for spec in specs}


@dataclass(frozen=True)
class PriorityTables:
    """Hard-coded weapon preference per distance band."""

    close: tuple[str, ...]
    medium: tuple[str, ...]
    far: tuple[str, ...]

    def __post_init__(self) -> None:
        for band in (self.close, self.medium, self.far):
            if not band:
                raise ValueError("priority lists must be non-empty")

    def for_band(self, band: DistanceBand) -> tuple[str, ...]:
        return (self.close, self.medium, self.far)[int(band)]

    def validate_against(self, armory: dict[str, WeaponSpec]) -> None:
        for band in (self.close, self.medium, self.far):
            for name in band:
                if name not in armory:
                    raise ValueError(f"priority table names unknown weapon {name!r}")


def default_priority_tables() -> PriorityTables:
    return PriorityTables(
        close=("flak_cannon", "shock_rifle", "mini_gun", "link_gun",
               ASSAULT_RIFLE, SHIELD_GUN),
        medium=("shock_rifle", "rocket_launcher", "link_gun", "mini_gun",
                "flak_cannon_alt", ASSAULT_RIFLE),
        far=("lightning_gun", "sniper_rifle", "shock_rifle", "link_gun",
             ASSAULT_RIFLE),
    )


def select_weapon(
    inventory: dict[str, int], band: DistanceBand, tables: PriorityTables
) -> str:
    """Best held weapon with ammo for the band, Assault Rifle / Shield Gun last."""
    if not inventory:
        raise ValueError("inventory is empty; agents always hold spawn weapons")
    for name in tables.for_band(band):
        if inventory.get(name, 0) > 0:
            return name
    if inventory.get(ASSAULT_RIFLE, 0) > 0:
        return ASSAULT_RIFLE
    if SHIELD_GUN in inventory:
        return SHIELD_GUN
    raise ValueError("inventory lacks the always-spawned fallback weapons")


def reward_for(damage: float) -> float:
    """Damage dealt this step, or the -1 penalty when the shot drew blood on nothing."""
    if not math.isfinite(damage) or damage < 0:
        raise ValueError(f"damage {damage} must be finite and >= 0")
    return damage if damage > 0 else -1.0


@dataclass(frozen=True)
class AimResolution:
    """Either a fixed world-space target point or a lock on the opponent."""

    point: tuple[float, float, float] | None
    locked_on: bool


def resolve_aim(
    action: ShootAction,
    shooter_pos: tuple[float, float],
    opponent_pos: tuple[float, float, float],
    opponent_vel: tuple[float, float],
    weapon: WeaponSpec,
) -> AimResolution:
    """Turn an abstract aim action into a target point (or a lock-on)."""
    if action.label == "Player":
        return AimResolution(point=None, locked_on=True)

    ox, oy, oz = opponent_pos
    dx = ox - shooter_pos[0]
    dy = oy - shooter_pos[1]
    norm = math.hypot(dx, dy)
    if norm == 0.0:
        ux, uy = 1.0, 0.0
    else:
        ux, uy = dx / norm, dy / norm
    # Shooter's-view right is the positive cross direction of the line of fire.
    right = (-uy, ux)

    label = action.label
    if label == "Head":
        return AimResolution((ox, oy, oz + HEAD_Z), False)
    if label in ("Mid", "Location"):
        return AimResolution((ox, oy, oz + MID_Z), False)
    if label == "Legs":
        return AimResolution((ox, oy, oz + LEGS_Z), False)
    if label.startswith("Above"):
        steps = {"Above": 1, "Above-2": 2, "Above-3": 3}[label]
        return AimResolution((ox, oy, oz + MID_Z + steps * weapon.above_step), False)
    if label.startswith(("Left", "Right")):
        factor = 2.0 if label.endswith("-2") else 1.0
        skew = factor * weapon.aim_skew
        if label.startswith("Left"):
            skew = -skew
        return AimResolution(
            (ox + skew * right[0], oy + skew * right[1], oz + MID_Z), False
        )
    raise ValueError(f"unknown aim action {label!r}")


def new_table_set(cfg: LearnerConfig | None = None) -> QTableSet:
    """Fresh all-zero Q-tables, one per weapon category."""
    cfg = cfg or LearnerConfig()
    tables = {cat: QTable(cat) for cat in CATEGORY_ORDER}
    return QTableSet(tables=tables, cfg=cfg, lives=0)
