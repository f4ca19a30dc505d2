"""Environment-agnostic batched grid mechanics.

All operations are pure array transforms over a batch of B independent
instances stepped in lockstep.  Nothing here knows about apples or coins;
the environment layer composes these primitives into per-step phases.

Conventions
-----------
* Arrays are batch-first: positions (B, N, 2), grids (B, H, W).
* Orientations: 0=N, 1=E, 2=S, 3=W; "forward" is the orientation vector.
* occupancy holds the agent id per cell, -1 when empty.
* An agent is active at step t iff alive and frozen_until <= t.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Cell, Terrain, walkable_mask
from .rng import Rng, rng_uniform

# Egocentric window geometry: 9 cells ahead, 1 behind, 5 to each side.
VIEW_FORWARD = 9
VIEW_BACKWARD = 1
VIEW_SIDE = 5
OBS_H = VIEW_FORWARD + VIEW_BACKWARD + 1
OBS_W = 2 * VIEW_SIDE + 1
ANCHOR = (VIEW_FORWARD, VIEW_SIDE)  # the observer's own cell in the window

DIR_VECS = np.array([[-1, 0], [0, 1], [1, 0], [0, -1]], dtype=np.int16)  # N E S W


def _window_offsets() -> tuple[np.ndarray, np.ndarray]:
    """(4, 11, 11) world-row/col offsets for each orientation."""
    wr, wc = np.meshgrid(np.arange(OBS_H), np.arange(OBS_W), indexing="ij")
    fwd = ANCHOR[0] - wr  # cells ahead of the agent
    lat = wc - ANCHOR[1]  # cells to the agent's right
    off_r = np.empty((4, OBS_H, OBS_W), dtype=np.int16)
    off_c = np.empty((4, OBS_H, OBS_W), dtype=np.int16)
    for o in range(4):
        d = DIR_VECS[o]
        right = DIR_VECS[(o + 1) % 4]
        off_r[o] = fwd * d[0] + lat * right[0]
        off_c[o] = fwd * d[1] + lat * right[1]
    return off_r, off_c


_OFF_R, _OFF_C = _window_offsets()


@dataclass
class SimState:
    """Shared spatial substrate for a batch of instances.

    terrain is static and common to the batch; everything else is per
    instance.  Subclassed state in the environment layer carries the
    env-specific extras (inventories, pollution, mining windows).
    """

    terrain: np.ndarray  # (H, W) uint8
    items: np.ndarray  # (B, H, W) uint8 Cell codes, 0 empty
    occ: np.ndarray  # (B, H, W) int8 agent id or -1
    step: np.ndarray  # (B,) int32
    pos: np.ndarray  # (B, N, 2) int16
    orient: np.ndarray  # (B, N) int8
    frozen_until: np.ndarray  # (B, N) int32
    alive: np.ndarray  # (B, N) bool
    respawn_at: np.ndarray  # (B, N) int32
    rng: Rng

    @property
    def batch(self) -> int:
        return self.items.shape[0]

    @property
    def num_agents(self) -> int:
        return self.pos.shape[1]

    def active(self) -> np.ndarray:
        """(B, N) mask of agents that may act this step."""
        return self.alive & (self.frozen_until <= self.step[:, None])


def check_occupancy(state: SimState) -> bool:
    """Occupancy layer and agent positions form a bijection over live agents."""
    B, N = state.alive.shape
    occ = np.full_like(state.occ, -1)
    for i in range(N):
        r, c = state.pos[:, i, 0], state.pos[:, i, 1]
        b = np.nonzero(state.alive[:, i])[0]
        if np.any(occ[b, r[b], c[b]] >= 0):
            return False
        occ[b, r[b], c[b]] = i
    return bool(np.array_equal(occ, state.occ))


def move_targets(pos: np.ndarray, orient: np.ndarray, actions: np.ndarray,
                 active: np.ndarray) -> np.ndarray:
    """Desired cell per agent for the movement actions.

    Actions 1-4 are forward/backward/strafe-left/strafe-right relative to
    facing; anything else (and inactive agents) targets the current cell.
    """
    fwd = DIR_VECS[orient]
    back = -fwd
    left = DIR_VECS[(orient - 1) % 4]
    right = DIR_VECS[(orient + 1) % 4]
    delta = np.zeros_like(pos)
    for code, vec in ((1, fwd), (2, back), (3, left), (4, right)):
        sel = (actions == code) & active
        delta[sel] = vec[sel]
    return pos + delta


def resolve_moves(terrain: np.ndarray, occ: np.ndarray, pos: np.ndarray,
                  targets: np.ndarray, alive: np.ndarray, rng: Rng,
                  ) -> tuple[np.ndarray, np.ndarray, Rng]:
    """Simultaneous movement with deterministic conflict resolution.

    An agent moves iff its target cell is walkable, it wins any same-cell
    conflict (per-step random priority permutation), it is not part of a
    two-agent swap, and the cell is free once every blocked agent has been
    settled.  Chains of agents following each other all advance; rotations
    of three or more agents advance as a cycle; swaps always fail.

    Returns updated (occ, pos, rng).  Draws exactly N uniforms per instance
    regardless of intents, keeping the stream schedule batch-independent.
    """
    B, N = pos.shape[:2]
    H, W = terrain.shape
    if np.abs(targets - pos).sum(axis=2).max(initial=0) > 1:
        raise ValueError("move intent outside the 4-neighborhood")
    walk = walkable_mask(terrain)
    rng, prio = rng_uniform(rng, N)  # (B, N); lower value wins conflicts
    rank = np.argsort(np.argsort(prio, axis=1, kind="stable"), axis=1, kind="stable")

    tgt = targets.copy()
    stay = ~alive
    tgt[stay] = pos[stay]

    # Walls, map edges and non-walkable terrain.
    inside = (
        (tgt[..., 0] >= 0) & (tgt[..., 0] < H) & (tgt[..., 1] >= 0) & (tgt[..., 1] < W)
    )
    tr = np.clip(tgt[..., 0], 0, H - 1)
    tc = np.clip(tgt[..., 1], 0, W - 1)
    blocked = ~inside | ~walk[tr, tc]
    tgt[blocked] = pos[blocked]

    not_self = ~np.eye(N, dtype=bool)
    pos_flat = (pos[..., 0].astype(np.int32) * W + pos[..., 1]).astype(np.int32)

    # Two-agent swaps fail outright (checked before conflicts so neither side
    # can "win" its way through the other).
    tgt_flat = (tgt[..., 0].astype(np.int32) * W + tgt[..., 1]).astype(np.int32)
    at_other = tgt_flat[:, :, None] == pos_flat[:, None, :]
    swap = (
        at_other
        & at_other.transpose(0, 2, 1)
        & not_self
        & alive[:, :, None]
        & alive[:, None, :]
    )
    moving = tgt_flat != pos_flat
    swap_fail = np.any(swap & moving[:, :, None] & moving[:, None, :], axis=2)
    tgt[swap_fail] = pos[swap_fail]
    tgt_flat[swap_fail] = pos_flat[swap_fail]

    # Same-target conflicts: the best rank among contenders wins.
    moving = tgt_flat != pos_flat
    contend = (
        (tgt_flat[:, :, None] == tgt_flat[:, None, :])
        & not_self
        & moving[:, :, None]
        & moving[:, None, :]
    )
    lose = np.any(contend & (rank[:, None, :] < rank[:, :, None]), axis=2)
    tgt[lose] = pos[lose]
    tgt_flat[lose] = pos_flat[lose]

    # Settle blocking: anyone targeting a cell whose occupant is staying put
    # must also stay.  Iterating to a fixed point resolves follow-chains and
    # leaves pure rotations free to move.
    for _ in range(N):
        moving = tgt_flat != pos_flat
        staying = ~moving & alive
        at_stayer = (
            (tgt_flat[:, :, None] == pos_flat[:, None, :])
            & staying[:, None, :]
            & not_self
        )
        newly_blocked = np.any(at_stayer, axis=2) & moving
        if not newly_blocked.any():
            break
        tgt[newly_blocked] = pos[newly_blocked]
        tgt_flat[newly_blocked] = pos_flat[newly_blocked]

    moving = (tgt_flat != pos_flat) & alive
    b_idx, a_idx = np.nonzero(moving)
    new_occ = occ.copy()
    new_occ[b_idx, pos[b_idx, a_idx, 0], pos[b_idx, a_idx, 1]] = -1
    new_occ[b_idx, tgt[b_idx, a_idx, 0], tgt[b_idx, a_idx, 1]] = a_idx.astype(np.int8)
    return new_occ, tgt, rng


def cast_beam(terrain: np.ndarray, pos: np.ndarray, orient: np.ndarray,
              hit_mask: np.ndarray, length: int, fire: np.ndarray,
              ) -> tuple[np.ndarray, np.ndarray]:
    """Scan `length` cells ahead of one agent across the batch.

    hit_mask is (B, H, W); the beam stops at the first wall (miss) or the
    first cell where hit_mask is set (hit).  Everything else is transparent.
    Returns (hit_cell (B, 2) int16 with -1 for miss, hit_found (B,) bool)
    for the (B,) agents given by pos/orient; `fire` masks who is shooting.
    """
    H, W = terrain.shape
    B = pos.shape[0]
    ks = np.arange(1, length + 1, dtype=np.int16)
    d = DIR_VECS[orient]  # (B, 2)
    r = pos[:, 0:1] + d[:, 0:1] * ks  # (B, L)
    c = pos[:, 1:2] + d[:, 1:2] * ks
    inside = (r >= 0) & (r < H) & (c >= 0) & (c < W)
    rc = np.where(inside, r, 0)
    cc = np.where(inside, c, 0)
    wall = ~inside | (terrain[rc, cc] == Terrain.WALL)
    hits = hit_mask[np.arange(B)[:, None], rc, cc] & ~wall & fire[:, None]
    # a wall anywhere at or before k blocks k (hit cells are never walls,
    # so the inclusive cumsum is exactly "wall strictly before the hit")
    hits &= ~(np.cumsum(wall, axis=1) > 0)
    first = hits.argmax(axis=1)
    lanes = np.arange(B)
    found = hits[lanes, first]
    hit_cell = np.full((B, 2), -1, dtype=np.int16)
    hit_cell[found, 0] = rc[found, first[found]]
    hit_cell[found, 1] = cc[found, first[found]]
    return hit_cell, found


def compose_cells(state: SimState, base: np.ndarray,
                  polluted: np.ndarray | None = None) -> np.ndarray:
    """Merge terrain, pollution, items and agents into one code grid."""
    if polluted is not None:
        grid = np.where(polluted, np.uint8(Cell.RIVER_POLLUTED), base)
    else:
        grid = np.broadcast_to(base, state.items.shape)
    grid = np.where(state.items != 0, state.items, grid)
    agent_codes = (state.occ + np.int8(Cell.AGENT0)).astype(np.uint8)
    return np.where(state.occ >= 0, agent_codes, grid)


class WindowGather:
    """Cached index machinery for egocentric window extraction.

    One instance per (grid shape, batch); reuses its padded scratch buffer,
    so a given instance must not be shared across threads.
    """

    def __init__(self, grid_shape: tuple[int, int], batch: int):
        H, W = grid_shape
        pad = VIEW_FORWARD
        self.pad = pad
        self.Hp, self.Wp = H + 2 * pad, W + 2 * pad
        self.H, self.W = H, W
        off = _OFF_R.astype(np.int32) * self.Wp + _OFF_C.astype(np.int32)
        self.off_flat = off.reshape(4, OBS_H * OBS_W)
        self.scratch = np.full((batch, self.Hp, self.Wp), Cell.WALL, dtype=np.uint8)
        self.batch = batch

    def extract(self, cells: np.ndarray, state: SimState) -> np.ndarray:
        B, N = state.alive.shape
        self.scratch[:, self.pad:self.pad + self.H, self.pad:self.pad + self.W] = cells
        flat = self.scratch.reshape(-1)
        # fold the lane index into one flat address space, then gather per
        # orientation with a fixed 121-entry offset stencil
        base = (
            np.arange(B, dtype=np.int64)[:, None] * (self.Hp * self.Wp)
            + (state.pos[..., 0].astype(np.int64) + self.pad) * self.Wp
            + state.pos[..., 1] + self.pad
        )
        obs = np.empty((B, N, OBS_H * OBS_W), dtype=np.uint8)
        flat_out = obs.reshape(B * N, -1)
        orient = state.orient.reshape(-1)
        base = base.reshape(-1)
        for o in range(4):
            sel = np.nonzero(orient == o)[0]
            if sel.size:
                flat_out[sel] = flat[base[sel, None] + self.off_flat[o][None, :]]
        obs = obs.reshape(B, N, OBS_H, OBS_W)
        obs[:, :, ANCHOR[0], ANCHOR[1]] = Cell.SELF
        obs[~state.alive] = Cell.WALL
        return obs


def extract_observations(cells: np.ndarray, state: SimState) -> np.ndarray:
    """Egocentric 11x11 windows, forward-up, observer coded SELF at (9, 5).

    Out-of-map cells read as WALL.  Dead agents get an all-WALL window.
    """
    return WindowGather(cells.shape[-2:], cells.shape[0]).extract(cells, state)


def spawn_items(items: np.ndarray, rng: Rng, prob: float, item: int,
                eligible: np.ndarray) -> tuple[np.ndarray, Rng]:
    """Independently drop `item` on each eligible empty cell with prob.

    Draws H*W uniforms per instance whether or not cells are eligible, so
    the stream schedule does not depend on state.
    """
    B, H, W = items.shape
    rng, u = rng_uniform(rng, H * W)
    land = (u.reshape(B, H, W) < prob) & eligible & (items == 0)
    out = items.copy()
    out[land] = item
    return out, rng


def cell_draws(state: SimState, cells: np.ndarray) -> np.ndarray:
    """One uniform per listed cell per instance, advancing state.rng.

    cells is a static (K, 2) list, so the draw schedule stays fixed.
    Returns (B, K) uniforms.
    """
    state.rng, u = rng_uniform(state.rng, len(cells))
    return u


def open_cells(state: SimState, cells: np.ndarray) -> np.ndarray:
    """(B, K) mask: listed cells that hold no item and no agent."""
    r, c = cells[:, 0], cells[:, 1]
    return (state.items[:, r, c] == 0) & (state.occ[:, r, c] < 0)


def place_on_cells(state: SimState, cells: np.ndarray, mask: np.ndarray,
                   codes) -> None:
    """Write item codes at listed cells where mask holds (in place)."""
    b, k = np.nonzero(mask)
    code_arr = np.broadcast_to(codes, mask.shape)
    state.items[b, cells[k, 0], cells[k, 1]] = code_arr[b, k]


def tick_timers(state: SimState) -> None:
    """Respawn dead agents whose timer expired onto free spawn cells.

    Mutates state in place.  Cell and orientation draws happen every step
    for every agent (fixed schedule); candidates are processed in id order,
    each picking uniformly among the spawn cells still free.  With no free
    cell the respawn waits for the next step.
    """
    B, N = state.alive.shape
    rng, cell_u = rng_uniform(state.rng, N)
    rng, orient_u = rng_uniform(rng, N)
    state.rng = rng
    due = ~state.alive & (state.respawn_at <= state.step[:, None])
    if not due.any():
        return
    spawns = np.argwhere(state.terrain == Terrain.SPAWN).astype(np.int16)
    for i in range(N):
        lanes = np.nonzero(due[:, i])[0]
        if lanes.size == 0:
            continue
        free = state.occ[lanes][:, spawns[:, 0], spawns[:, 1]] < 0  # (L, S)
        n_free = free.sum(axis=1)
        ok = n_free > 0
        lanes = lanes[ok]
        if lanes.size == 0:
            continue
        k = np.minimum((cell_u[lanes, i] * n_free[ok]).astype(np.int64), n_free[ok] - 1)
        choice = np.argmax(np.cumsum(free[ok], axis=1) > k[:, None], axis=1)
        r, c = spawns[choice, 0], spawns[choice, 1]
        state.pos[lanes, i, 0] = r
        state.pos[lanes, i, 1] = c
        state.orient[lanes, i] = (orient_u[lanes, i] * 4).astype(np.int8)
        state.alive[lanes, i] = True
        state.occ[lanes, r, c] = i


def apply_turns(state: SimState, actions: np.ndarray, active: np.ndarray) -> None:
    turn_l = (actions == 5) & active
    turn_r = (actions == 6) & active
    state.orient[turn_l] = (state.orient[turn_l] - 1) % 4
    state.orient[turn_r] = (state.orient[turn_r] + 1) % 4


# Offsets at Euclidean distance <= 2 from a cell, center excluded: the
# 12-cell disc used for local-density rules.
DISC_OFFSETS = np.array(
    [(dr, dc)
     for dr in range(-2, 3)
     for dc in range(-2, 3)
     if (dr, dc) != (0, 0) and dr * dr + dc * dc <= 4],
    dtype=np.int64,
)


def count_disc(mask: np.ndarray) -> np.ndarray:
    """Per-cell count of set cells within Euclidean distance 2 (batched)."""
    out = np.zeros(mask.shape, dtype=np.int16)
    H, W = mask.shape[-2:]
    for dr, dc in DISC_OFFSETS:
        src_r = slice(max(0, -dr), min(H, H - dr))
        src_c = slice(max(0, -dc), min(W, W - dc))
        dst_r = slice(max(0, dr), min(H, H + dr))
        dst_c = slice(max(0, dc), min(W, W + dc))
        out[..., dst_r, dst_c] += mask[..., src_r, src_c]
    return out
