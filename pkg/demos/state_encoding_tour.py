"""A guided tour of the 1296-state combat encoding.

Builds a few concrete perceptions of an opponent, shows which discrete
attributes they map to, and proves the index round-trips through decode().
"""

from sarsa_arena.encoder import CombatObservation, decode, encode

SCENES = [
    ("standing still, close, facing me, hitscan out", CombatObservation(
        distance=300.0, rel_velocity=(0.0, 0.0), opponent_jumping=False,
        facing_angle=10.0, weapon_instant_hit=True,
    )),
    ("strafing right at medium range", CombatObservation(
        distance=900.0, rel_velocity=(0.0, 320.0), opponent_jumping=False,
        facing_angle=-75.0, weapon_instant_hit=True,
    )),
    ("sprinting away, far, jumping, rocket in hand", CombatObservation(
        distance=2400.0, rel_velocity=(850.0, 0.0), opponent_jumping=True,
        facing_angle=-179.0, weapon_instant_hit=False,
    )),
    ("charging towards me fast", CombatObservation(
        distance=600.0, rel_velocity=(-900.0, -60.0), opponent_jumping=False,
        facing_angle=0.0, weapon_instant_hit=True,
    )),
]

for title, obs in SCENES:
    idx = encode(obs)
    dist, speed, jumping, direction, facing, instant = decode(idx)
    print(f"{title}")
    print(f"  state index {idx}")
    print(f"  distance={dist.name} speed={speed.name} jumping={jumping}")
    print(f"  moving {direction.radial.name}/{direction.tangential.name}, "
          f"facing sector {facing.name}, instant_hit={instant}")
    print()

# Every index decodes and re-encodes to itself; the map is a bijection.
from sarsa_arena.encoder import N_STATES, encode_parts

assert all(encode_parts(*decode(i)) == i for i in range(N_STATES))
print(f"round-trip verified for all {N_STATES} states")
