"""Campaign runner: repeated deathmatch games with persistent learning state.

Writes one row per bot life to lives.csv, one row per game to games.csv, and
periodic Q-table snapshots.  Output is deterministic for a fixed (config,
seed) pair, down to the byte.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field
from pathlib import Path

from .arena import (
    KillEvent,
    PickupEvent,
    RL_AGENT_ID,
    RlShooterController,
    SuicideEvent,
    World,
    format_event,
)
from .config import SimConfig
from .learner import QTableSet
from .metrics import FieldSummary, hit_percentage, kd_ratio, summarize_field
from .snapshots import write_snapshot
from .weapons import new_table_set

LIVES_FIELDS = (
    "run_id", "game", "life", "level", "hits", "misses",
    "reward", "duration_s", "death_cause",
)
GAMES_BASE_FIELDS = (
    "run_id", "game", "level", "kills", "deaths_by_others", "suicides",
    "max_kill_streak", "weapons_collected", "ammo_collected",
    "time_moving_s", "distance_uu", "shoot_s_total",
)


@dataclass(frozen=True)
class LifeRecord:
    run_id: str
    game: int
    life: int
    level: int
    hits: int
    misses: int
    reward: float
    duration_s: float
    death_cause: str  # killed | suicide-pit | suicide-splash | game-end


@dataclass(frozen=True)
class GameRecord:
    run_id: str
    game: int
    level: int
    kills: int
    deaths_by_others: int
    suicides: int
    max_kill_streak: int
    weapons_collected: int
    ammo_collected: int
    time_moving_s: float
    distance_uu: float
    shoot_s: dict[str, float]

    @property
    def shoot_s_total(self) -> float:
        return sum(self.shoot_s.values())

    @property
    def deaths(self) -> int:
        return self.deaths_by_others + self.suicides


@dataclass(frozen=True)
class CampaignSettings:
    level: int
    games: int
    minutes: float
    seed: int
    out_dir: Path
    snapshot_every: int = 50
    record_events: bool = False

    @property
    def run_id(self) -> str:
        return f"L{self.level}-s{self.seed}"


@dataclass
class CampaignResult:
    settings: CampaignSettings
    lives: list[LifeRecord] = field(default_factory=list)
    games: list[GameRecord] = field(default_factory=list)
    tset: QTableSet | None = None


def _fmt(value) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def run_campaign(
    sim: SimConfig,
    settings: CampaignSettings,
    tset: QTableSet | None = None,
    controller_factory=RlShooterController,
) -> CampaignResult:
    """Play `settings.games` games at one opponent level, learning throughout."""
    out = Path(settings.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(settings.seed)
    tset = tset if tset is not None else new_table_set(sim.learner)
    controller = controller_factory(tset, sim.armory, sim.priority, rng)
    result = CampaignResult(settings=settings, tset=tset)
    weapon_names = list(sim.armory)
    games_fields = list(GAMES_BASE_FIELDS) + [f"shoot_s_{n}" for n in weapon_names]
    ticks_per_game = round(settings.minutes * 60 * sim.physics.tick_hz)

    lives_path = out / "lives.csv"
    games_path = out / "games.csv"
    events_file = (out / "events.log").open("w", encoding="ascii") if (
        settings.record_events
    ) else None
    life_counter = 0

    with lives_path.open("w", newline="", encoding="ascii") as lives_f, \
            games_path.open("w", newline="", encoding="ascii") as games_f:
        lives_w = csv.writer(lives_f)
        lives_w.writerow(LIVES_FIELDS)
        games_w = csv.writer(games_f)
        games_w.writerow(games_fields)

        for game in range(1, settings.games + 1):
            world = World(
                sim.arena, sim.armory, sim.physics, sim.behavior,
                sim.profiles[settings.level], controller, rng,
            )
            kills = deaths_by_others = suicides = 0
            streak = max_streak = 0

            for _ in range(ticks_per_game):
                for event in world.tick():
                    if events_file is not None:
                        events_file.write(format_event(event) + "\n")
                    if isinstance(event, KillEvent):
                        if event.killer == RL_AGENT_ID and event.victim != RL_AGENT_ID:
                            kills += 1
                            streak += 1
                            max_streak = max(max_streak, streak)
                        if event.victim == RL_AGENT_ID:
                            deaths_by_others += 1
                            streak = 0
                    elif isinstance(event, SuicideEvent):
                        if event.victim == RL_AGENT_ID:
                            suicides += 1
                            streak = 0

                if world.completed_life is not None:
                    stats = world.completed_life
                    world.completed_life = None
                    life_counter += 1
                    record = LifeRecord(
                        run_id=settings.run_id, game=game, life=life_counter,
                        level=settings.level, hits=stats.hits, misses=stats.misses,
                        reward=stats.reward, duration_s=stats.duration_s,
                        death_cause=stats.cause,
                    )
                    result.lives.append(record)
                    lives_w.writerow(_life_row(record))
                    if settings.snapshot_every > 0 and (
                        tset.lives % settings.snapshot_every == 0
                    ):
                        write_snapshot(
                            tset,
                            out / f"snap_{settings.level}_{tset.lives}.rlsq",
                        )

            rl_agent = world.agents[RL_AGENT_ID]
            if rl_agent.alive:
                stats = world.finalize_truncated_life()
                life_counter += 1
                record = LifeRecord(
                    run_id=settings.run_id, game=game, life=life_counter,
                    level=settings.level, hits=stats.hits, misses=stats.misses,
                    reward=stats.reward, duration_s=stats.duration_s,
                    death_cause=stats.cause,
                )
                result.lives.append(record)
                lives_w.writerow(_life_row(record))
            else:
                # Dead at the whistle: the death was already recorded.
                controller.on_game_end()

            game_record = GameRecord(
                run_id=settings.run_id, game=game, level=settings.level,
                kills=kills, deaths_by_others=deaths_by_others, suicides=suicides,
                max_kill_streak=max_streak,
                weapons_collected=world.stat_weapons_collected,
                ammo_collected=world.stat_ammo_collected,
                time_moving_s=world.stat_time_moving,
                distance_uu=world.stat_distance,
                shoot_s=dict(world.stat_shoot_time),
            )
            result.games.append(game_record)
            games_w.writerow(_game_row(game_record, weapon_names))

    if events_file is not None:
        events_file.close()
    write_snapshot(tset, out / f"snap_{settings.level}_final.rlsq")
    return result


def _life_row(r: LifeRecord) -> list[str]:
    return [
        r.run_id, str(r.game), str(r.life), str(r.level), str(r.hits),
        str(r.misses), _fmt(r.reward), _fmt(r.duration_s), r.death_cause,
    ]


def _game_row(r: GameRecord, weapon_names: list[str]) -> list[str]:
    row = [
        r.run_id, str(r.game), str(r.level), str(r.kills),
        str(r.deaths_by_others), str(r.suicides), str(r.max_kill_streak),
        str(r.weapons_collected), str(r.ammo_collected),
        _fmt(r.time_moving_s), _fmt(r.distance_uu), _fmt(r.shoot_s_total),
    ]
    row += [_fmt(r.shoot_s.get(name, 0.0)) for name in weapon_names]
    return row


def load_lives_csv(path: Path | str) -> list[LifeRecord]:
    records = []
    with Path(path).open(newline="", encoding="ascii") as f:
        for row in csv.DictReader(f):
            records.append(LifeRecord(
                run_id=row["run_id"], game=int(row["game"]), life=int(row["life"]),
                level=int(row["level"]), hits=int(row["hits"]),
                misses=int(row["misses"]), reward=float(row["reward"]),
                duration_s=float(row["duration_s"]), death_cause=row["death_cause"],
            ))
    return records


def load_games_csv(path: Path | str) -> list[GameRecord]:
    records = []
    with Path(path).open(newline="", encoding="ascii") as f:
        for row in csv.DictReader(f):
            shoot = {
                key[len("shoot_s_"):]: float(value)
                for key, value in row.items()
                if key.startswith("shoot_s_") and key != "shoot_s_total"
            }
            records.append(GameRecord(
                run_id=row["run_id"], game=int(row["game"]), level=int(row["level"]),
                kills=int(row["kills"]),
                deaths_by_others=int(row["deaths_by_others"]),
                suicides=int(row["suicides"]),
                max_kill_streak=int(row["max_kill_streak"]),
                weapons_collected=int(row["weapons_collected"]),
                ammo_collected=int(row["ammo_collected"]),
                time_moving_s=float(row["time_moving_s"]),
                distance_uu=float(row["distance_uu"]),
                shoot_s=shoot,
            ))
    return records


# ---------------------------------------------------------------------------
# Reporting


@dataclass(frozen=True)
class LevelSummary:
    level: int
    games: int
    kills: int
    deaths_by_others: int
    suicides: int
    kd: float | None
    hit_pct: float | None
    per_game_kills: FieldSummary
    per_game_deaths: FieldSummary
    per_life_hits: FieldSummary


def summarize_level(
    lives: list[LifeRecord], games: list[GameRecord]
) -> LevelSummary:
    if not games:
        raise ValueError("no game records to summarize")
    level = games[0].level
    kills = sum(g.kills for g in games)
    deaths_by_others = sum(g.deaths_by_others for g in games)
    suicides = sum(g.suicides for g in games)
    hits = sum(r.hits for r in lives)
    misses = sum(r.misses for r in lives)
    return LevelSummary(
        level=level,
        games=len(games),
        kills=kills,
        deaths_by_others=deaths_by_others,
        suicides=suicides,
        kd=kd_ratio(kills, deaths_by_others, suicides),
        hit_pct=hit_percentage(hits, misses),
        per_game_kills=summarize_field([g.kills for g in games]),
        per_game_deaths=summarize_field([g.deaths for g in games]),
        per_life_hits=summarize_field([r.hits for r in lives]),
    )


def format_report(summaries: list[LevelSummary]) -> str:
    lines = [
        "level  games  kills  deaths  suicides     K:D   hit%",
    ]
    for s in sorted(summaries, key=lambda s: s.level):
        kd = f"{s.kd:7.2f}" if s.kd is not None else "      -"
        hp = f"{s.hit_pct:6.1f}" if s.hit_pct is not None else "     -"
        lines.append(
            f"{s.level:5d}  {s.games:5d}  {s.kills:5d}  {s.deaths_by_others:6d}"
            f"  {s.suicides:8d}  {kd} {hp}"
        )
        pg = s.per_game_kills
        lines.append(
            f"       kills/game: mean {pg.mean:.2f} std {pg.std:.2f}"
            f" min {pg.minimum:.0f} max {pg.maximum:.0f} median {pg.median:.0f}"
        )
    return "\n".join(lines)
