"""Deterministic fixed-timestep arena: agents, projectiles, damage and deaths.

The world advances at a fixed physics tick.  The learning bot takes a
shooting decision every few ticks; scripted opponents run a skill-profile
behavior every tick.  All randomness flows through one seeded stream, so a
(config, seed) pair replays tick-for-tick.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import geometry as geo
from .encoder import CombatObservation, discretize_distance, encode
from .learner import (
    QTableSet,
    begin_life,
    epsilon_for_lives,
    sarsa_update,
    select_action,
    terminal_update,
)
from .weapons import (
    ASSAULT_RIFLE,
    AimResolution,
    MID_Z,
    PriorityTables,
    SHIELD_GUN,
    ShootAction,
    WeaponSpec,
    actions_for,
    resolve_aim,
    select_weapon,
)
from .weapons import CYLINDER_HEIGHT, CYLINDER_RADIUS

RL_AGENT_ID = 0


# ---------------------------------------------------------------------------
# Static world description


@dataclass(frozen=True)
class Wall:
    x1: float
    y1: float
    x2: float
    y2: float

    @property
    def a(self) -> tuple[float, float]:
        return (self.x1, self.y1)

    @property
    def b(self) -> tuple[float, float]:
        return (self.x2, self.y2)


@dataclass(frozen=True)
class Pit:
    x: float
    y: float
    radius: float


@dataclass(frozen=True)
class PickupSpot:
    kind: str  # "weapon" | "ammo"
    weapon: str | None
    x: float
    y: float


@dataclass(frozen=True)
class Arena:
    size: float
    walls: tuple[Wall, ...]
    pits: tuple[Pit, ...]
    spawn_points: tuple[tuple[float, float], ...]
    pickups: tuple[PickupSpot, ...]

    def __post_init__(self) -> None:
        if len(self.spawn_points) < 4:
            raise ValueError("arena needs at least 4 spawn points")
        for sx, sy in self.spawn_points:
            if not (0 < sx < self.size and 0 < sy < self.size):
                raise ValueError("spawn point outside the walkable region")
            for pit in self.pits:
                if geo.point_in_circle((sx, sy), (pit.x, pit.y), pit.radius):
                    raise ValueError("spawn point inside a pit")

    @property
    def blocking_segments(self) -> tuple[tuple[tuple[float, float], tuple[float, float]], ...]:
        segs = [(w.a, w.b) for w in self.walls]
        s = self.size
        segs += [
            ((0.0, 0.0), (s, 0.0)),
            ((s, 0.0), (s, s)),
            ((s, s), (0.0, s)),
            ((0.0, s), (0.0, 0.0)),
        ]
        return tuple(segs)


@dataclass(frozen=True)
class OpponentProfile:
    level: int
    speed_fraction: float
    strafes: bool
    dodges: bool
    closes_distance: bool
    max_aim_error_deg: float
    fov_deg: float
    turn_rate_deg_s: float
    aim_lag_s: float
    combat_jump_prob_s: float = 0.0


def default_profiles() -> dict[int, OpponentProfile]:
    return {
        1: OpponentProfile(1, 0.6, False, False, False, 2.6, 35.0, 180.0, 0.1, 0.0),
        3: OpponentProfile(3, 0.8, True, False, False, 3.5, 40.0, 270.0, 0.09, 0.15),
        5: OpponentProfile(5, 1.0, True, True, True, 2.5, 80.0, 360.0, 0.035, 1.2),
    }


@dataclass(frozen=True)
class PhysicsParams:
    tick_hz: int = 30
    decision_every: int = 6
    base_speed: float = 440.0
    respawn_delay_s: float = 2.0
    jump_duration_s: float = 0.7
    jump_height_uu: float = 60.0
    pickup_respawn_s: float = 20.0
    spawn_assault_ammo: int = 600
    weapon_pickup_ammo: int = 15
    ammo_pickup_amount: int = 150
    eye_height: float = 30.0
    rl_fov_deg: float = 360.0
    rl_turn_rate_deg_s: float = 720.0
    aim_lag_s: float = 0.1

    @property
    def dt(self) -> float:
        return 1.0 / self.tick_hz


@dataclass(frozen=True)
class BehaviorParams:
    strafe_flip_min_s: float = 0.5
    strafe_flip_max_s: float = 1.5
    jump_prob_per_s: float = 0.3
    dodge_radius: float = 400.0
    waypoint_radius: float = 60.0
    pit_avoid_margin: float = 100.0
    fire_align_tolerance_deg: float = 20.0
    engage_range: float = 900.0
    scripted_stop_range: float = 600.0


def default_arena() -> Arena:
    s = 4000.0
    return Arena(
        size=s,
        walls=(
            Wall(1200, 1400, 1200, 2600),
            Wall(2800, 1400, 2800, 2600),
        ),
        pits=(
            Pit(2000, 2000, 200),
            Pit(1000, 3000, 160),
            Pit(3000, 1000, 160),
        ),
        spawn_points=((400, 400), (3600, 400), (400, 3600), (3600, 3600)),
        pickups=(
            PickupSpot("weapon", "shock_rifle", 2000, 600),
            PickupSpot("weapon", "rocket_launcher", 2000, 3400),
            PickupSpot("weapon", "flak_cannon", 600, 2000),
            PickupSpot("weapon", "lightning_gun", 3400, 2000),
            PickupSpot("weapon", "mini_gun", 1400, 1000),
            PickupSpot("weapon", "link_gun", 2600, 3000),
            PickupSpot("ammo", None, 800, 800),
            PickupSpot("ammo", None, 3200, 800),
            PickupSpot("ammo", None, 800, 3200),
            PickupSpot("ammo", None, 3200, 3200),
            PickupSpot("ammo", None, 2000, 1200),
            PickupSpot("ammo", None, 2000, 2800),
        ),
    )


# ---------------------------------------------------------------------------
# Events


@dataclass(frozen=True)
class DamageEvent:
    tick: int
    attacker: int
    victim: int
    amount: float
    weapon: str
    self_inflicted: bool


@dataclass(frozen=True)
class KillEvent:
    tick: int
    killer: int
    victim: int


@dataclass(frozen=True)
class SuicideEvent:
    tick: int
    victim: int
    cause: str  # "pit" | "self-splash"


@dataclass(frozen=True)
class SpawnEvent:
    tick: int
    agent: int


@dataclass(frozen=True)
class PickupEvent:
    tick: int
    agent: int
    item: str


Event = DamageEvent | KillEvent | SuicideEvent | SpawnEvent | PickupEvent


def format_event(e: Event) -> str:
    if isinstance(e, DamageEvent):
        return (
            f"{e.tick} damage {e.attacker} {e.victim} {e.amount!r} "
            f"{e.weapon} {'self' if e.self_inflicted else 'enemy'}"
        )
    if isinstance(e, KillEvent):
        return f"{e.tick} kill {e.killer} {e.victim}"
    if isinstance(e, SuicideEvent):
        return f"{e.tick} suicide {e.victim} {e.cause}"
    if isinstance(e, SpawnEvent):
        return f"{e.tick} spawn {e.agent}"
    return f"{e.tick} pickup {e.agent} {e.item}"


# ---------------------------------------------------------------------------
# Mutable entities


class AgentState:
    __slots__ = (
        "id", "controller", "x", "y", "z", "vx", "vy", "yaw", "health",
        "jump_t", "inventory", "alive", "respawn_timer", "current_weapon",
        "cooldown", "fire_command", "waypoint", "strafe_dir", "strafe_timer",
        "last_attacker", "last_attack_self", "pit_dead",
        "alert_pos", "alert_timer",
    )

    def __init__(self, agent_id: int, controller: str) -> None:
        self.id = agent_id
        self.controller = controller  # "rl" or "scripted"
        self.x = 0.0
        self.y = 0.0
        self.z = 0.0
        self.vx = 0.0
        self.vy = 0.0
        self.yaw = 0.0
        self.health = 100.0
        self.jump_t = -1.0  # < 0 means grounded
        self.inventory: dict[str, int] = {}
        self.alive = False
        self.respawn_timer = 0.0
        self.current_weapon = ASSAULT_RIFLE
        self.cooldown = 0.0
        self.fire_command: FireCommand | None = None
        self.waypoint: tuple[float, float] | None = None
        self.strafe_dir = 1.0
        self.strafe_timer = 0.0
        self.last_attacker = -1
        self.last_attack_self = False
        self.pit_dead = False
        self.alert_pos: tuple[float, float] | None = None
        self.alert_timer = 0.0

    @property
    def pos(self) -> tuple[float, float]:
        return (self.x, self.y)

    @property
    def jumping(self) -> bool:
        return self.jump_t >= 0.0


@dataclass
class FireCommand:
    weapon: str
    aim: AimResolution
    target_id: int


class Projectile:
    __slots__ = ("shooter", "weapon", "x", "y", "z", "vx", "vy", "vz",
                 "remaining", "shot_marker")

    def __init__(self, shooter: int, weapon: str, pos, vel, travel: float,
                 shot_marker: list | None) -> None:
        self.shooter = shooter
        self.weapon = weapon
        self.x, self.y, self.z = pos
        self.vx, self.vy, self.vz = vel
        self.remaining = travel
        self.shot_marker = shot_marker


class PickupState:
    __slots__ = ("spot", "timer")

    def __init__(self, spot: PickupSpot) -> None:
        self.spot = spot
        self.timer = 0.0  # 0 means available

    @property
    def available(self) -> bool:
        return self.timer <= 0.0


# ---------------------------------------------------------------------------
# The learning shooter's controller


@dataclass
class LifeStats:
    hits: int = 0
    misses: int = 0
    reward: float = 0.0
    duration_s: float = 0.0
    cause: str = "game-end"


class RlShooterController:
    """Online Sarsa(lambda) shooting: observe, pick a weapon and aim action,
    and feed realized damage back as reward on the following decision."""

    def __init__(
        self,
        tset: QTableSet,
        armory: dict[str, WeaponSpec],
        priority: PriorityTables,
        rng: random.Random,
    ) -> None:
        self.tset = tset
        self.armory = armory
        self.priority = priority
        self.rng = rng
        self.pending: tuple | None = None  # (category, state, action)
        self.interval_damage = 0.0
        self.interval_shots = 0
        self.life_reward = 0.0

    def _close_interval(self, next_state_action: tuple | None) -> None:
        """Update the pending pair; `next_state_action` is (category, s', a')."""
        if self.pending is None:
            return
        pcat, ps, pa = self.pending
        if self.interval_shots == 0:
            # The chosen action never discharged (cooldown); no update.
            self.pending = None
            return
        r = self.interval_damage if self.interval_damage > 0 else -1.0
        self.life_reward += r
        ptable = self.tset.tables[pcat]
        cfg = self.tset.cfg
        if next_state_action is None:
            terminal_update(ptable, ps, pa, r, cfg)
        else:
            ncat, ns, na = next_state_action
            if ncat == pcat:
                sarsa_update(ptable, ps, pa, r, ns, na, cfg)
            else:
                ntable = self.tset.tables[ncat]
                sarsa_update(
                    ptable, ps, pa, r, ps, pa, cfg,
                    next_value=ntable.value(ns, na),
                )
                # Credit does not flow across weapon categories.
                begin_life(ptable)
        self.pending = None

    def decide(
        self, agent: AgentState, obs_distance: float, make_obs
    ) -> tuple[str, ShootAction]:
        """One shooting decision against a visible opponent.

        `make_obs` builds the CombatObservation once the weapon (and its
        instant-hit flag) is known.
        """
        band = discretize_distance(obs_distance)
        weapon_name = select_weapon(agent.inventory, band, self.priority)
        weapon = self.armory[weapon_name]
        obs: CombatObservation = make_obs(weapon.instant_hit)
        state = encode(obs)
        category = weapon.category
        table = self.tset.tables[category]

        eps = epsilon_for_lives(self.tset.cfg.schedule, self.tset.lives)
        action_idx, _ = select_action(table, state, eps, self.rng)
        self._close_interval((category, state, action_idx))
        self.pending = (category, state, action_idx)
        self.interval_damage = 0.0
        self.interval_shots = 0

        action = actions_for(category)[action_idx]
        return weapon_name, action

    def on_shot(self) -> None:
        self.interval_shots += 1

    def on_damage_dealt(self, amount: float) -> None:
        self.interval_damage += amount

    def on_death(self) -> float:
        """Terminal update and episode bookkeeping; returns the life's reward."""
        self._close_interval(None)
        reward = self.life_reward
        self.life_reward = 0.0
        self.interval_damage = 0.0
        self.interval_shots = 0
        self.tset.lives += 1
        self.tset.begin_life()
        return reward

    def on_game_end(self) -> float:
        """Drop any open interval; the truncated life keeps its reward so far."""
        self.pending = None
        reward = self.life_reward
        self.life_reward = 0.0
        self.interval_damage = 0.0
        self.interval_shots = 0
        self.tset.begin_life()
        return reward


class GreedyController(RlShooterController):
    """Frozen-policy variant: always greedy, never updates the tables."""

    def decide(self, agent, obs_distance, make_obs):
        band = discretize_distance(obs_distance)
        weapon_name = select_weapon(agent.inventory, band, self.priority)
        weapon = self.armory[weapon_name]
        state = encode(make_obs(weapon.instant_hit))
        table = self.tset.tables[weapon.category]
        values = table.row(state)
        best = max(values)
        action_idx = self.rng.choice([a for a, v in enumerate(values) if v == best])
        self._track_reward()
        self.pending = (weapon.category, state, action_idx)
        self.interval_damage = 0.0
        self.interval_shots = 0
        return weapon_name, actions_for(weapon.category)[action_idx]

    def _track_reward(self) -> None:
        if self.pending is not None and self.interval_shots > 0:
            self.life_reward += (
                self.interval_damage if self.interval_damage > 0 else -1.0
            )

    def on_death(self) -> float:
        self._track_reward()
        reward = self.life_reward
        self.life_reward = 0.0
        self.pending = None
        self.interval_damage = 0.0
        self.interval_shots = 0
        self.tset.lives += 1
        return reward

    def on_game_end(self) -> float:
        reward = self.life_reward
        self.life_reward = 0.0
        self.pending = None
        self.interval_damage = 0.0
        self.interval_shots = 0
        return reward


class RandomController(GreedyController):
    """Uniform-random-action baseline; never updates the tables."""

    def decide(self, agent, obs_distance, make_obs):
        band = discretize_distance(obs_distance)
        weapon_name = select_weapon(agent.inventory, band, self.priority)
        weapon = self.armory[weapon_name]
        state = encode(make_obs(weapon.instant_hit))
        action_idx = self.rng.randrange(5)
        self._track_reward()
        self.pending = (weapon.category, state, action_idx)
        self.interval_damage = 0.0
        self.interval_shots = 0
        return weapon_name, actions_for(weapon.category)[action_idx]


# ---------------------------------------------------------------------------
# The world


class World:
    def __init__(
        self,
        arena: Arena,
        armory: dict[str, WeaponSpec],
        physics: PhysicsParams,
        behavior: BehaviorParams,
        profile: OpponentProfile,
        controller: RlShooterController,
        rng: random.Random,
        n_opponents: int = 3,
    ) -> None:
        self.arena = arena
        self.armory = armory
        self.physics = physics
        self.behavior = behavior
        self.profile = profile
        self.controller = controller
        self.rng = rng
        self.tick_count = 0
        self.segments = arena.blocking_segments
        self.waypoints = tuple(
            [(p.x, p.y) for p in arena.pickups] + list(arena.spawn_points)
        )

        self.agents = [AgentState(RL_AGENT_ID, "rl")]
        for i in range(n_opponents):
            self.agents.append(AgentState(i + 1, "scripted"))
        self.projectiles: list[Projectile] = []
        self.pickups = [PickupState(spot) for spot in arena.pickups]

        # Per-life counters for the learning bot.
        self.life_hits = 0
        self.life_misses = 0
        self.life_start_tick = 0
        self.completed_life: LifeStats | None = None

        # Per-game statistics for the learning bot.
        self.stat_weapons_collected = 0
        self.stat_ammo_collected = 0
        self.stat_time_moving = 0.0
        self.stat_distance = 0.0
        self.stat_shoot_time: dict[str, float] = {name: 0.0 for name in armory}

        for i, agent in enumerate(self.agents):
            self._spawn(agent, self.arena.spawn_points[i % len(self.arena.spawn_points)])

    # -- spawning ----------------------------------------------------------

    def _spawn_loadout(self) -> dict[str, int]:
        return {ASSAULT_RIFLE: self.physics.spawn_assault_ammo, SHIELD_GUN: 1}

    def _spawn(self, agent: AgentState, pos: tuple[float, float]) -> None:
        agent.x, agent.y = pos
        agent.z = 0.0
        agent.vx = agent.vy = 0.0
        agent.yaw = self.rng.uniform(-180.0, 180.0)
        agent.health = 100.0
        agent.jump_t = -1.0
        agent.inventory = self._spawn_loadout()
        agent.alive = True
        agent.respawn_timer = 0.0
        agent.current_weapon = ASSAULT_RIFLE
        agent.cooldown = 0.0
        agent.fire_command = None
        agent.waypoint = self.rng.choice(self.waypoints)
        agent.strafe_dir = self.rng.choice((-1.0, 1.0))
        agent.strafe_timer = 0.0
        agent.last_attacker = -1
        agent.last_attack_self = False
        agent.pit_dead = False
        agent.alert_pos = None
        agent.alert_timer = 0.0
        if agent.id == RL_AGENT_ID:
            self.life_hits = 0
            self.life_misses = 0
            self.life_start_tick = self.tick_count

    def _respawn_point(self, agent: AgentState) -> tuple[float, float]:
        enemies = [a for a in self.agents if a.alive and a.id != agent.id]
        if not enemies:
            return self.rng.choice(self.arena.spawn_points)
        best = None
        best_d = -1.0
        for sp in self.arena.spawn_points:
            d = min(math.hypot(sp[0] - e.x, sp[1] - e.y) for e in enemies)
            if d > best_d:
                best_d = d
                best = sp
        return best

    # -- perception --------------------------------------------------------

    def line_of_sight(self, p1: tuple[float, float], p2: tuple[float, float]) -> bool:
        for a, b in self.segments:
            if geo.segments_intersect(p1, p2, a, b):
                return False
        return True

    def nearest_visible(
        self, agent: AgentState, fov_deg: float
    ) -> AgentState | None:
        best = None
        best_d = math.inf
        for other in self.agents:
            if other.id == agent.id or not other.alive:
                continue
            d = math.hypot(other.x - agent.x, other.y - agent.y)
            if d >= best_d:
                continue
            if fov_deg < 180.0:
                bearing = geo.bearing_deg(agent.pos, other.pos)
                if abs(geo.normalize_angle(bearing - agent.yaw)) > fov_deg:
                    continue
            if self.line_of_sight(agent.pos, other.pos):
                best = other
                best_d = d
        return best

    def observation_for(
        self, agent: AgentState, target: AgentState, instant_hit: bool
    ) -> CombatObservation:
        ux, uy = geo.normalize2((target.x - agent.x, target.y - agent.y))
        rvx = target.vx - agent.vx
        rvy = target.vy - agent.vy
        radial = rvx * ux + rvy * uy
        tangential = ux * rvy - uy * rvx
        facing = geo.normalize_angle(
            target.yaw - geo.bearing_deg(target.pos, agent.pos)
        )
        return CombatObservation(
            distance=math.hypot(target.x - agent.x, target.y - agent.y),
            rel_velocity=(radial, tangential),
            opponent_jumping=target.jumping,
            facing_angle=facing,
            weapon_instant_hit=instant_hit,
        )

    # -- tick --------------------------------------------------------------

    def tick(self) -> list[Event]:
        dt = self.physics.dt
        self.tick_count += 1
        t = self.tick_count

        damage_events: list[DamageEvent] = []
        death_events: list[Event] = []
        spawn_events: list[SpawnEvent] = []
        pickup_events: list[PickupEvent] = []

        # Respawns.
        for agent in self.agents:
            if not agent.alive:
                agent.respawn_timer -= dt
                if agent.respawn_timer <= 0.0:
                    self._spawn(agent, self._respawn_point(agent))
                    spawn_events.append(SpawnEvent(t, agent.id))

        # Controls and movement.
        for agent in self.agents:
            if not agent.alive:
                continue
            if agent.controller == "rl":
                self._control_rl(agent, dt)
            else:
                self._control_scripted(agent, dt)
            self._move(agent, dt)

        # Pit deaths.
        for agent in self.agents:
            if agent.alive and not agent.jumping:
                for pit in self.arena.pits:
                    if geo.point_in_circle(agent.pos, (pit.x, pit.y), pit.radius):
                        agent.pit_dead = True
                        agent.alive = False
                        break

        # Firing.
        damage_records: list[tuple[int, int, float, str, bool]] = []
        for agent in self.agents:
            if not agent.alive:
                continue
            agent.cooldown = max(0.0, agent.cooldown - dt)
            cmd = agent.fire_command
            if cmd is None:
                continue
            if agent.id == RL_AGENT_ID:
                self.stat_shoot_time[cmd.weapon] += dt
            if agent.cooldown > 0.0:
                continue
            self._discharge(agent, cmd, damage_records)

        # Projectiles.
        self._advance_projectiles(dt, damage_records)

        # Apply damage.
        for attacker, victim_id, amount, weapon, self_inflicted in damage_records:
            victim = self.agents[victim_id]
            if not victim.alive:
                continue
            amount = min(amount, victim.health)
            if amount <= 0.0:
                continue
            victim.health -= amount
            victim.last_attacker = attacker
            victim.last_attack_self = self_inflicted
            damage_events.append(
                DamageEvent(t, attacker, victim_id, amount, weapon, self_inflicted)
            )
            if attacker == RL_AGENT_ID and not self_inflicted:
                self.controller.on_damage_dealt(amount)
            if not self_inflicted and 0 <= attacker < len(self.agents):
                shooter = self.agents[attacker]
                if shooter.alive:
                    victim.alert_pos = shooter.pos
                    victim.alert_timer = 4.0
            if victim.health <= 0.0:
                victim.alive = False

        # Deaths.
        for agent in self.agents:
            if agent.alive:
                continue
            if agent.pit_dead:
                death_events.append(SuicideEvent(t, agent.id, "pit"))
            elif agent.health <= 0.0 and agent.respawn_timer == 0.0:
                if agent.last_attack_self:
                    death_events.append(SuicideEvent(t, agent.id, "self-splash"))
                else:
                    death_events.append(KillEvent(t, agent.last_attacker, agent.id))
            else:
                continue  # already dead, waiting to respawn
            agent.pit_dead = False
            agent.respawn_timer = self.physics.respawn_delay_s
            agent.fire_command = None
            if agent.id == RL_AGENT_ID:
                self._finalize_life(death_events[-1])

        # Pickups.
        for pickup in self.pickups:
            if not pickup.available:
                pickup.timer -= dt
                continue
            spot = pickup.spot
            for agent in self.agents:
                if not agent.alive:
                    continue
                if spot.kind == "weapon" and agent.controller == "scripted":
                    continue
                if (agent.x - spot.x) ** 2 + (agent.y - spot.y) ** 2 <= 60.0 ** 2:
                    self._collect(agent, pickup, pickup_events)
                    break

        return [*damage_events, *death_events, *spawn_events, *pickup_events]

    def _finalize_life(self, death_event: Event) -> None:
        reward = self.controller.on_death()
        cause = "killed"
        if isinstance(death_event, SuicideEvent):
            cause = f"suicide-{death_event.cause}"
        self.completed_life = LifeStats(
            hits=self.life_hits,
            misses=self.life_misses,
            reward=reward,
            duration_s=(self.tick_count - self.life_start_tick) * self.physics.dt,
            cause=cause,
        )
        self.life_hits = 0
        self.life_misses = 0
        self.life_start_tick = self.tick_count

    def finalize_truncated_life(self) -> LifeStats:
        """Close the in-progress life at game end without counting a death."""
        reward = self.controller.on_game_end()
        return LifeStats(
            hits=self.life_hits,
            misses=self.life_misses,
            reward=reward,
            duration_s=(self.tick_count - self.life_start_tick) * self.physics.dt,
            cause="game-end",
        )

    def _collect(
        self, agent: AgentState, pickup: PickupState, events: list[PickupEvent]
    ) -> None:
        spot = pickup.spot
        if spot.kind == "weapon":
            agent.inventory[spot.weapon] = (
                agent.inventory.get(spot.weapon, 0) + self.physics.weapon_pickup_ammo
            )
            item = spot.weapon
            if agent.id == RL_AGENT_ID:
                self.stat_weapons_collected += 1
        else:
            weapon = agent.current_weapon
            if weapon == SHIELD_GUN:
                weapon = ASSAULT_RIFLE
            agent.inventory[weapon] = (
                agent.inventory.get(weapon, 0) + self.physics.ammo_pickup_amount
            )
            item = "ammo"
            if agent.id == RL_AGENT_ID:
                self.stat_ammo_collected += 1
        pickup.timer = self.physics.pickup_respawn_s
        events.append(PickupEvent(self.tick_count, agent.id, item))

    # -- controllers -------------------------------------------------------

    def _control_rl(self, agent: AgentState, dt: float) -> None:
        decision_tick = self.tick_count % self.physics.decision_every == 0
        target = self.nearest_visible(agent, self.physics.rl_fov_deg)

        if decision_tick:
            if target is None:
                agent.fire_command = None
            else:
                dist = math.hypot(target.x - agent.x, target.y - agent.y)
                weapon_name, action = self.controller.decide(
                    agent,
                    dist,
                    lambda instant: self.observation_for(agent, target, instant),
                )
                agent.current_weapon = weapon_name
                aim = self._resolve_action_aim(agent, target, action, weapon_name)
                agent.fire_command = FireCommand(weapon_name, aim, target.id)
                if self.rng.random() < self.behavior.jump_prob_per_s * dt * self.physics.decision_every:
                    self._start_jump(agent)

        # Movement: close to fighting range, strafe there, patrol otherwise.
        if target is not None:
            dist = math.hypot(target.x - agent.x, target.y - agent.y)
            if dist > self.behavior.engage_range:
                self._approach(agent, target, dt, 1.0, self.behavior.engage_range * 0.35)
            else:
                self._combat_strafe(agent, target, dt, 1.0)
            agent.yaw = geo.turn_towards(
                agent.yaw,
                geo.bearing_deg(agent.pos, target.pos),
                self.physics.rl_turn_rate_deg_s * dt,
            )
        else:
            agent.fire_command = None
            self._patrol(agent, 1.0)

    def _resolve_action_aim(
        self, agent: AgentState, target: AgentState, action: ShootAction, weapon_name: str
    ) -> AimResolution:
        return resolve_aim(
            action,
            agent.pos,
            (target.x, target.y, target.z),
            (target.vx, target.vy),
            self.armory[weapon_name],
        )

    def _control_scripted(self, agent: AgentState, dt: float) -> None:
        profile = self.profile
        target = self.nearest_visible(agent, profile.fov_deg)
        if target is None:
            agent.fire_command = None
            if agent.alert_timer > 0.0 and agent.alert_pos is not None:
                # Taking fire from outside the view cone: turn and close in.
                agent.alert_timer -= dt
                bearing = geo.bearing_deg(agent.pos, agent.alert_pos)
                agent.yaw = geo.turn_towards(
                    agent.yaw, bearing, profile.turn_rate_deg_s * dt
                )
                ux, uy = geo.normalize2(
                    (agent.alert_pos[0] - agent.x, agent.alert_pos[1] - agent.y)
                )
                speed = self.physics.base_speed * profile.speed_fraction
                agent.vx = ux * speed
                agent.vy = uy * speed
            else:
                self._patrol(agent, profile.speed_fraction)
            return
        agent.alert_timer = 0.0

        bearing = geo.bearing_deg(agent.pos, target.pos)
        agent.yaw = geo.turn_towards(
            agent.yaw, bearing, profile.turn_rate_deg_s * dt
        )

        # Movement while engaged.
        if profile.closes_distance:
            self._approach(agent, target, dt, profile.speed_fraction,
                           self.behavior.scripted_stop_range)
        elif profile.strafes:
            self._combat_strafe(agent, target, dt, profile.speed_fraction)
        else:
            agent.vx = agent.vy = 0.0  # static during combat

        if profile.dodges:
            self._dodge_projectiles(agent)
        if profile.combat_jump_prob_s > 0.0 and not agent.jumping:
            if self.rng.random() < profile.combat_jump_prob_s * dt:
                self._start_jump(agent)

        aligned = abs(geo.normalize_angle(bearing - agent.yaw)) <= (
            self.behavior.fire_align_tolerance_deg
        )
        if aligned:
            agent.fire_command = FireCommand(
                ASSAULT_RIFLE, AimResolution(point=None, locked_on=True), target.id
            )
        else:
            agent.fire_command = None

    def _patrol(self, agent: AgentState, speed_fraction: float) -> None:
        wp = agent.waypoint
        if wp is None or math.hypot(wp[0] - agent.x, wp[1] - agent.y) < (
            self.behavior.waypoint_radius
        ):
            agent.waypoint = wp = self.rng.choice(self.waypoints)
        dx, dy = wp[0] - agent.x, wp[1] - agent.y
        ux, uy = self._veer_around_pits(agent, *geo.normalize2((dx, dy)))
        speed = self.physics.base_speed * speed_fraction
        agent.vx = ux * speed
        agent.vy = uy * speed
        agent.yaw = geo.bearing_deg((0.0, 0.0), (ux, uy))

    def _veer_around_pits(self, agent: AgentState, ux: float, uy: float):
        """Steer a purposeful heading around pits; sidestepping stays blind."""
        for pit in self.arena.pits:
            margin = pit.radius + self.behavior.pit_avoid_margin
            px, py = pit.x - agent.x, pit.y - agent.y
            along = px * ux + py * uy
            if 0.0 < along < margin * 2.5:
                side = ux * py - uy * px
                if abs(side) < margin:
                    sign = 1.0 if side <= 0 else -1.0
                    return geo.normalize2((ux - sign * uy, uy + sign * ux))
        return (ux, uy)

    def _combat_strafe(
        self, agent: AgentState, target: AgentState, dt: float, speed_fraction: float
    ) -> None:
        agent.strafe_timer -= dt
        if agent.strafe_timer <= 0.0:
            agent.strafe_dir = self.rng.choice((-1.0, 1.0))
            agent.strafe_timer = self.rng.uniform(
                self.behavior.strafe_flip_min_s, self.behavior.strafe_flip_max_s
            )
        ux, uy = geo.normalize2((target.x - agent.x, target.y - agent.y))
        speed = self.physics.base_speed * speed_fraction
        agent.vx = -uy * agent.strafe_dir * speed
        agent.vy = ux * agent.strafe_dir * speed

    def _approach(
        self,
        agent: AgentState,
        target: AgentState,
        dt: float,
        speed_fraction: float,
        stop_range: float,
    ) -> None:
        ux, uy = geo.normalize2((target.x - agent.x, target.y - agent.y))
        dist = math.hypot(target.x - agent.x, target.y - agent.y)
        speed = self.physics.base_speed * speed_fraction
        if dist > stop_range:
            # Advance with a diagonal strafe component.
            agent.strafe_timer -= dt
            if agent.strafe_timer <= 0.0:
                agent.strafe_dir = self.rng.choice((-1.0, 1.0))
                agent.strafe_timer = self.rng.uniform(
                    self.behavior.strafe_flip_min_s, self.behavior.strafe_flip_max_s
                )
            sx, sy = -uy * agent.strafe_dir, ux * agent.strafe_dir
            mx, my = geo.normalize2((ux + 0.6 * sx, uy + 0.6 * sy))
            mx, my = self._veer_around_pits(agent, mx, my)
            agent.vx = mx * speed
            agent.vy = my * speed
        else:
            self._combat_strafe(agent, target, dt, speed_fraction)

    def _dodge_projectiles(self, agent: AgentState) -> None:
        radius_sq = self.behavior.dodge_radius ** 2
        for proj in self.projectiles:
            dx, dy = agent.x - proj.x, agent.y - proj.y
            if dx * dx + dy * dy > radius_sq:
                continue
            if dx * proj.vx + dy * proj.vy <= 0.0:
                continue  # moving away
            # Sidestep perpendicular to the projectile's course.
            px, py = geo.normalize2((proj.vx, proj.vy))
            side = 1.0 if (px * dy - py * dx) <= 0 else -1.0
            speed = self.physics.base_speed
            agent.vx = -py * side * speed
            agent.vy = px * side * speed
            if not agent.jumping:
                self._start_jump(agent)
            break

    def _start_jump(self, agent: AgentState) -> None:
        if not agent.jumping:
            agent.jump_t = 0.0

    # -- physics -----------------------------------------------------------

    def _move(self, agent: AgentState, dt: float) -> None:
        if agent.jumping:
            agent.jump_t += dt
            dur = self.physics.jump_duration_s
            if agent.jump_t >= dur:
                agent.jump_t = -1.0
                agent.z = 0.0
            else:
                frac = agent.jump_t / dur
                agent.z = 4.0 * self.physics.jump_height_uu * frac * (1.0 - frac)

        nx = agent.x + agent.vx * dt
        ny = agent.y + agent.vy * dt
        r = CYLINDER_RADIUS
        nx = min(max(nx, r), self.arena.size - r)
        ny = min(max(ny, r), self.arena.size - r)
        blocked = False
        for wall in self.arena.walls:
            if geo.segments_intersect(agent.pos, (nx, ny), wall.a, wall.b):
                blocked = True
                break
        if not blocked:
            moved = math.hypot(nx - agent.x, ny - agent.y)
            agent.x, agent.y = nx, ny
        else:
            moved = 0.0
        if agent.id == RL_AGENT_ID:
            self.stat_distance += moved
            if moved > 1e-9:
                self.stat_time_moving += dt

    # -- firing ------------------------------------------------------------

    def _muzzle(self, agent: AgentState) -> tuple[float, float, float]:
        return (agent.x, agent.y, agent.z + self.physics.eye_height)

    def _aim_point(
        self, agent: AgentState, cmd: FireCommand
    ) -> tuple[float, float, float] | None:
        if cmd.aim.locked_on:
            target = self.agents[cmd.target_id]
            if not target.alive:
                return None
            # Tracking trails a moving target by the shooter's reaction lag.
            if agent.controller == "scripted":
                lag = self.profile.aim_lag_s
            else:
                lag = self.physics.aim_lag_s
            return (
                target.x - target.vx * lag,
                target.y - target.vy * lag,
                MID_Z,
            )
        return cmd.aim.point

    def _discharge(
        self,
        agent: AgentState,
        cmd: FireCommand,
        damage_records: list,
    ) -> None:
        weapon = self.armory[cmd.weapon]
        aim_point = self._aim_point(agent, cmd)
        if aim_point is None:
            return
        if cmd.weapon != SHIELD_GUN:
            if agent.inventory.get(cmd.weapon, 0) <= 0:
                return
            agent.inventory[cmd.weapon] -= 1
        agent.cooldown = weapon.fire_interval

        is_rl = agent.id == RL_AGENT_ID
        if is_rl:
            self.controller.on_shot()

        if weapon.melee_range > 0.0:
            hit = self._melee(agent, weapon, aim_point, damage_records)
            if is_rl:
                self.life_hits += 1 if hit else 0
                self.life_misses += 0 if hit else 1
            return

        if weapon.is_hitscan:
            hit_any = False
            for _ in range(weapon.pellets):
                hit_any |= self._hitscan(agent, weapon, aim_point, damage_records)
            if is_rl:
                self.life_hits += 1 if hit_any else 0
                self.life_misses += 0 if hit_any else 1
            return

        self._launch_projectile(agent, weapon, aim_point)

    def _melee(self, agent, weapon: WeaponSpec, aim_point, damage_records) -> bool:
        aim_yaw = geo.bearing_deg(agent.pos, (aim_point[0], aim_point[1]))
        best = None
        best_d = weapon.melee_range
        for other in self.agents:
            if other.id == agent.id or not other.alive:
                continue
            d = math.hypot(other.x - agent.x, other.y - agent.y)
            if d > best_d:
                continue
            off = abs(geo.normalize_angle(geo.bearing_deg(agent.pos, other.pos) - aim_yaw))
            if off > 60.0:
                continue
            if self.line_of_sight(agent.pos, other.pos):
                best = other
                best_d = d
        if best is None:
            return False
        damage_records.append(
            (agent.id, best.id, weapon.damage_per_hit, weapon.name, False)
        )
        return True

    def _hitscan(self, agent, weapon: WeaponSpec, aim_point, damage_records) -> bool:
        origin = self._muzzle(agent)
        dx = aim_point[0] - origin[0]
        dy = aim_point[1] - origin[1]
        dz = aim_point[2] - origin[2]
        norm = math.sqrt(dx * dx + dy * dy + dz * dz)
        if norm == 0.0:
            return False
        dx, dy, dz = dx / norm, dy / norm, dz / norm

        spread = weapon.spread_deg
        if agent.controller == "scripted":
            spread_yaw = math.radians(
                self.rng.uniform(-self.profile.max_aim_error_deg,
                                 self.profile.max_aim_error_deg)
            )
            dx, dy = (
                dx * math.cos(spread_yaw) - dy * math.sin(spread_yaw),
                dx * math.sin(spread_yaw) + dy * math.cos(spread_yaw),
            )
        elif spread > 0.0:
            spread_yaw = math.radians(self.rng.uniform(-spread, spread))
            dx, dy = (
                dx * math.cos(spread_yaw) - dy * math.sin(spread_yaw),
                dx * math.sin(spread_yaw) + dy * math.cos(spread_yaw),
            )

        direction = (dx, dy, dz)
        best_t = math.inf
        victim = None
        for other in self.agents:
            if other.id == agent.id or not other.alive:
                continue
            t = geo.ray_cylinder_t(
                origin, direction, other.pos, other.z, CYLINDER_RADIUS, CYLINDER_HEIGHT
            )
            if t is not None and t < best_t:
                best_t = t
                victim = other
        if victim is None:
            return False
        for a, b in self.segments:
            t_wall = geo.ray_segment_t((origin[0], origin[1]), (dx, dy), a, b)
            if t_wall is not None and t_wall < best_t:
                return False
        damage_records.append(
            (agent.id, victim.id, weapon.damage_per_hit, weapon.name, False)
        )
        return True

    def _launch_projectile(self, agent, weapon: WeaponSpec, aim_point) -> None:
        origin = self._muzzle(agent)
        dx = aim_point[0] - origin[0]
        dy = aim_point[1] - origin[1]
        dz = aim_point[2] - origin[2]
        norm = math.sqrt(dx * dx + dy * dy + dz * dz)
        if norm == 0.0:
            return
        speed = weapon.projectile_speed
        vel = (dx / norm * speed, dy / norm * speed, dz / norm * speed)
        marker = None
        if agent.id == RL_AGENT_ID:
            self.life_misses += 1
            marker = [False]
        self.projectiles.append(
            Projectile(agent.id, weapon.name, origin, vel, norm, marker)
        )

    def _advance_projectiles(self, dt: float, damage_records: list) -> None:
        survivors: list[Projectile] = []
        for proj in self.projectiles:
            weapon = self.armory[proj.weapon]
            step = weapon.projectile_speed * dt
            end = (proj.x + proj.vx * dt, proj.y + proj.vy * dt, proj.z + proj.vz * dt)

            # Direct hit on an agent (shooter excluded: self harm is splash only).
            direction = (proj.vx * dt, proj.vy * dt, proj.vz * dt)
            best_t = math.inf
            victim = None
            for other in self.agents:
                if other.id == proj.shooter or not other.alive:
                    continue
                t = geo.ray_cylinder_t(
                    (proj.x, proj.y, proj.z), direction, other.pos,
                    other.z, CYLINDER_RADIUS, CYLINDER_HEIGHT,
                )
                if t is not None and t <= 1.0 and t < best_t:
                    best_t = t
                    victim = other
            wall_t = math.inf
            for a, b in self.segments:
                t = geo.ray_segment_t((proj.x, proj.y), (direction[0], direction[1]), a, b)
                if t is not None and t <= 1.0 and t < wall_t:
                    wall_t = t

            if victim is not None and best_t <= wall_t:
                point = (
                    proj.x + direction[0] * best_t,
                    proj.y + direction[1] * best_t,
                    proj.z + direction[2] * best_t,
                )
                self._detonate(proj, weapon, point, victim, damage_records)
                continue
            if wall_t < math.inf:
                point = (
                    proj.x + direction[0] * wall_t,
                    proj.y + direction[1] * wall_t,
                    proj.z + direction[2] * wall_t,
                )
                self._detonate(proj, weapon, point, None, damage_records)
                continue
            proj.remaining -= step
            if proj.remaining <= 0.0 or end[2] < 0.0:
                self._detonate(proj, weapon, end, None, damage_records)
                continue
            proj.x, proj.y, proj.z = end
            survivors.append(proj)
        self.projectiles = survivors

    def _detonate(
        self,
        proj: Projectile,
        weapon: WeaponSpec,
        point: tuple[float, float, float],
        direct_victim: AgentState | None,
        damage_records: list,
    ) -> None:
        damaged_opponent = False
        if direct_victim is not None:
            damage_records.append(
                (proj.shooter, direct_victim.id, weapon.damage_per_hit,
                 weapon.name, False)
            )
            damaged_opponent = True
        if weapon.splash_radius > 0.0:
            for other in self.agents:
                if not other.alive or other is direct_victim:
                    continue
                if other.id == proj.shooter and not weapon.self_damage:
                    continue
                dx = other.x - point[0]
                dy = other.y - point[1]
                dz = (other.z + MID_Z) - point[2]
                d = math.sqrt(dx * dx + dy * dy + dz * dz)
                if d >= weapon.splash_radius:
                    continue
                if not self.line_of_sight((point[0], point[1]), other.pos):
                    continue
                amount = weapon.damage_per_hit * (1.0 - d / weapon.splash_radius)
                if amount <= 0.0:
                    continue
                self_inflicted = other.id == proj.shooter
                damage_records.append(
                    (proj.shooter, other.id, amount, weapon.name, self_inflicted)
                )
                if not self_inflicted:
                    damaged_opponent = True
        if damaged_opponent and proj.shot_marker is not None:
            if not proj.shot_marker[0]:
                proj.shot_marker[0] = True
                self.life_misses -= 1
                self.life_hits += 1
