//! Exact dynamic programming for Roman {3}-domination on block graphs.
//!
//! # Rooted states
//!
//! The program processes a block graph one block at a time, peeling end
//! blocks inward (see [`crate::blocks::end_block_order`]). For every vertex
//! `u` it maintains minimum weights of partial labellings of the subgraph
//! `H` currently hanging at `u`, classified by how the labelling interacts
//! with `u`. Nine public states (slot = index into [`StateVector::states`]):
//!
//! | slot | f(u) | neighbour sum inside H | rest of H |
//! |------|------|------------------------|-----------|
//! | 0..3 | slot | whatever the labelling gives | everything valid, u included |
//! | 4    | 0    | exactly 2              | valid with u deleted |
//! | 5    | 0    | exactly 1              | valid with u deleted |
//! | 6    | 0    | exactly 0              | valid with u deleted |
//! | 7    | 1    | exactly 1              | valid with u deleted |
//! | 8    | 1    | exactly 0              | valid with u deleted |
//!
//! Slots 4..=8 are *pending*: `u` still owes `p` more neighbour mass, where
//! `p` is 1, 2, 3, 1, 2 respectively; later blocks through `u` must supply
//! it. "Valid with u deleted" means every other vertex meets its demand
//! without counting `u`'s label at all.
//!
//! Two further *relaxed* slots are tracked internally and exposed through
//! [`StateVector::all_slots`]:
//!
//! | slot | f(u) | neighbour sum | rest of H |
//! |------|------|---------------|-----------|
//! | 9    | 1    | exactly 1     | valid with u's label counted |
//! | 10   | 1    | exactly 0     | valid with u's label counted |
//!
//! The relaxed slots are necessary for exactness. Take the spider tree
//! r - u, u - w1 - x1, u - w2 - x2 and hang the `u` side at `u`: the
//! labelling f(u)=1, f(w_i)=0, f(x_i)=2 has weight 5, leaves `u` owing 2,
//! and satisfies both w_i only *because* u's 1 counts for them. It fits
//! slot 10 and no other: slots 7/8 forbid leaning on u, and every label-0
//! alternative for u costs at least 6. The true state-3 value at r is
//! 3 + 5 = 8 and is unreachable through the nine public slots alone.
//! Conversely a mate's relaxed labelling is *not* sound where the public
//! slots 7/8 are consumed, because those two slots promise validity even
//! without the root vertex; both families are therefore tracked.
//!
//! # Composing a block
//!
//! Let a clique block {v1, ..., vk} attach to the processed graph at its
//! anchor v1, whose current vector is `h`; the other block vertices
//! ("mates") bring vectors of their own hanging subgraphs. For a target
//! slot at v1 the composition chooses one slot per vertex. Writing `S` for
//! the total label mass the mates put on themselves and `o` for the label
//! v1 contributes to the mates' neighbour sums, a mate slot with root label
//! λ and pending demand p is admissible iff p <= S - λ + o: the mate's owed
//! mass must arrive from the other block vertices it sees. Complete targets
//! (0..=3) take o = the target label and accept any S large enough to cover
//! what v1 itself still owes; pending targets take o = 0 (slots 4..=8
//! promise validity without v1) or o = 1 (relaxed slots), and S is pinned
//! to the target's exact neighbour sum minus what `h` already provides.
//!
//! Minimising over mates grouped by exact supply class S = 0, 1, 2, >=3
//! yields the ten reusable aggregates of [`Aggregates`] and the per-slot
//! rule table in [`compose_block_with_choices`]. Mates always compose
//! through the relaxed slots 9/10 rather than 7/8 (a mate keeps its own
//! root vertex, so its interior may lean on it); the strict slots 7/8 are
//! consumed only when the *target* itself is slot 7/8.

use std::fmt;
use std::ops::Add;

use crate::blocks::{self, BlockDecomposition, NotBlockGraph, PeelStep};
use crate::graph::{verify_labeling, Graph, Labeling, VertexId};

// ============================================================================
// Weights
// ============================================================================

/// A solution weight that may be infeasible. `Infeasible` absorbs addition
/// and compares greater than every finite weight, so minima over mixed sets
/// do the right thing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtWeight {
    Finite(u64),
    Infeasible,
}

pub use ExtWeight::{Finite, Infeasible};

impl ExtWeight {
    pub const ZERO: ExtWeight = Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    /// The finite value; panics on `Infeasible`.
    pub fn unwrap_finite(self) -> u64 {
        match self {
            Finite(x) => x,
            Infeasible => panic!("unwrap_finite on Infeasible"),
        }
    }
}

impl Add for ExtWeight {
    type Output = ExtWeight;
    fn add(self, rhs: ExtWeight) -> ExtWeight {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Infeasible,
        }
    }
}

impl Add<u64> for ExtWeight {
    type Output = ExtWeight;
    fn add(self, rhs: u64) -> ExtWeight {
        self + Finite(rhs)
    }
}

impl fmt::Debug for ExtWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(x) => write!(f, "{x}"),
            Infeasible => write!(f, "inf"),
        }
    }
}

impl fmt::Display for ExtWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// ============================================================================
// State vectors
// ============================================================================

/// Number of public rooted states.
pub const NUM_STATES: usize = 9;
/// Total tracked slots: the public states plus the two relaxed variants.
pub const NUM_SLOTS: usize = 11;

/// Relaxed counterpart of slot 7 (root labelled 1, neighbour sum exactly 1,
/// interior valid with the root counted).
const T7: usize = 9;
/// Relaxed counterpart of slot 8 (neighbour sum exactly 0).
const T8: usize = 10;

/// Label the root carries in each slot.
const ROOT_LABEL: [u8; NUM_SLOTS] = [0, 1, 2, 3, 0, 0, 0, 1, 1, 1, 1];

/// Slots a finite reconstruction chain may bottom out in: the slots finite
/// on a bare leaf.
const LEAF_SLOTS: [usize; 5] = [2, 3, 6, 8, T8];

/// Minimum weights of the rooted partial labellings of a hanging subgraph,
/// one entry per state; see the module docs for the state table.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct StateVector {
    slots: [ExtWeight; NUM_SLOTS],
}

impl StateVector {
    /// Vector of an isolated root: labels 2 and 3 are complete; label 0
    /// owing 3 (slot 6), label 1 owing 2 (slots 8 and 10) are pending; the
    /// rest cannot exist without neighbours.
    pub fn leaf() -> StateVector {
        let mut slots = [Infeasible; NUM_SLOTS];
        slots[2] = Finite(2);
        slots[3] = Finite(3);
        slots[6] = Finite(0);
        slots[8] = Finite(1);
        slots[T8] = Finite(1);
        StateVector { slots }
    }

    /// The nine public states.
    pub fn states(&self) -> [ExtWeight; NUM_STATES] {
        self.slots[..NUM_STATES].try_into().unwrap()
    }

    /// One public state.
    pub fn state(&self, i: usize) -> ExtWeight {
        assert!(i < NUM_STATES, "public states are 0..9");
        self.slots[i]
    }

    /// All slots: the nine public states followed by the two relaxed
    /// variants (root labelled 1, neighbour sum exactly 1 then exactly 0,
    /// interior valid with the root's label counted).
    pub fn all_slots(&self) -> [ExtWeight; NUM_SLOTS] {
        self.slots
    }

    /// Cheapest complete labelling: minimum over states 0..=3.
    pub fn best_complete(&self) -> ExtWeight {
        self.slots[..4].iter().copied().min().unwrap()
    }

    fn min_over(&self, set: &[usize]) -> Pick {
        let mut best = Pick { val: Infeasible, slot: set[0] as u8 };
        for &s in set {
            if self.slots[s] < best.val {
                best = Pick { val: self.slots[s], slot: s as u8 };
            }
        }
        best
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector{:?}", self.slots)
    }
}

// ============================================================================
// Mate-side minima and aggregates
// ============================================================================

#[derive(Clone, Copy)]
struct Pick {
    val: ExtWeight,
    slot: u8,
}

/// Admissible mate slots by threshold. `Z_SETS[t]`: label-0 slots with
/// pending demand <= t. `ONE_SETS[t]`: label-1 slots (relaxed family) with
/// pending demand - 1 <= t... i.e. demand p <= t counting the label-1 slot
/// demands as 0, 1, 2 for slots 1, 9, 10.
const Z_SETS: [&[usize]; 4] = [&[0], &[0, 4], &[0, 4, 5], &[0, 4, 5, 6]];
const ONE_SETS: [&[usize]; 3] = [&[1], &[1, T7], &[1, T7, T8]];
/// Any positively labelled mate slot (for the second slot of `a2`).
const POS_SET: [usize; 5] = [1, 2, 3, T7, T8];
/// Every mate-admissible slot (supply class >= 3 admits them all).
const ALL_SET: [usize; 9] = [0, 1, 2, 3, 4, 5, 6, T7, T8];

/// Per-mate minima over the slot sets above, with the winning slot.
struct MateMins {
    z: [Pick; 4],
    one: [Pick; 3],
    pos: Pick,
    all: Pick,
}

fn mate_mins(sv: &StateVector) -> MateMins {
    MateMins {
        z: [
            sv.min_over(Z_SETS[0]),
            sv.min_over(Z_SETS[1]),
            sv.min_over(Z_SETS[2]),
            sv.min_over(Z_SETS[3]),
        ],
        one: [
            sv.min_over(ONE_SETS[0]),
            sv.min_over(ONE_SETS[1]),
            sv.min_over(ONE_SETS[2]),
        ],
        pos: sv.min_over(&POS_SET),
        all: sv.min_over(&ALL_SET),
    }
}

/// A sum of per-mate values supporting O(1) "total minus a few elements".
#[derive(Clone, Copy)]
struct ExcSum {
    finite: u64,
    inf: u32,
}

impl ExcSum {
    fn new(vals: impl Iterator<Item = ExtWeight>) -> ExcSum {
        let mut s = ExcSum { finite: 0, inf: 0 };
        for v in vals {
            match v {
                Finite(x) => s.finite += x,
                Infeasible => s.inf += 1,
            }
        }
        s
    }

    /// Removes one element known to be part of the sum.
    fn without(mut self, x: ExtWeight) -> ExcSum {
        match x {
            Finite(v) => self.finite -= v,
            Infeasible => self.inf -= 1,
        }
        self
    }

    fn value(self) -> ExtWeight {
        if self.inf > 0 {
            Infeasible
        } else {
            Finite(self.finite)
        }
    }
}

/// Cheapest ways for the mates of a block to supply label mass to the
/// anchor, one field per (supply, shape, offset) combination. `offset` is
/// the label the anchor itself contributes to the mates' neighbour sums.
///
/// * `c1`, `c2`, `c3` — supply exactly 1 (one mate labelled 1), offset 0,
///   1, >=2 respectively;
/// * `b1`, `b3` — supply exactly 2 via one mate labelled 2, offset 0 resp.
///   >=1; `b2`, `b4` — supply exactly 2 via two mates labelled 1, offset 0
///   resp. >=1;
/// * `a1` — supply >=3 via a mate labelled 3; `a2` — via a mate labelled 2
///   plus another positive mate; `a3` — via three mates labelled 1. The
///   remaining mates are free (offset is irrelevant at supply >=3).
///
/// Each value already includes the *other* mates at their cheapest
/// admissible slots, so a composition line is just `h-part + aggregate`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Aggregates {
    pub c1: ExtWeight,
    pub c2: ExtWeight,
    pub c3: ExtWeight,
    pub b1: ExtWeight,
    pub b2: ExtWeight,
    pub b3: ExtWeight,
    pub b4: ExtWeight,
    pub a1: ExtWeight,
    pub a2: ExtWeight,
    pub a3: ExtWeight,
}

/// Distinguished-mate indices behind an aggregate value.
#[derive(Clone, Copy, Debug)]
enum Picks {
    None,
    One(u32),
    Two(u32, u32),
    Three(u32, u32, u32),
}

#[derive(Clone, Copy)]
struct Agg {
    val: ExtWeight,
    picks: Picks,
}

const AGG_NONE: Agg = Agg { val: Infeasible, picks: Picks::None };

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum AggId {
    C1,
    C2,
    C3,
    B1,
    B2,
    B3,
    B4,
    A1,
    A2,
    A3,
}

struct ComposeCtx {
    mm: Vec<MateMins>,
    zsum: [ExcSum; 4],
    allsum: ExcSum,
    aggs: [Agg; 10], // indexed by AggId as usize
}

impl ComposeCtx {
    fn agg(&self, id: AggId) -> Agg {
        self.aggs[id as usize]
    }
}

fn compose_ctx(mates: &[StateVector]) -> ComposeCtx {
    let q = mates.len();
    let mm: Vec<MateMins> = mates.iter().map(mate_mins).collect();
    let zsum = [
        ExcSum::new(mm.iter().map(|m| m.z[0].val)),
        ExcSum::new(mm.iter().map(|m| m.z[1].val)),
        ExcSum::new(mm.iter().map(|m| m.z[2].val)),
        ExcSum::new(mm.iter().map(|m| m.z[3].val)),
    ];
    let allsum = ExcSum::new(mm.iter().map(|m| m.all.val));
    let mut aggs = [AGG_NONE; 10];

    // Single distinguished mate: (its value, the others' z-threshold).
    let singles: [(AggId, &dyn Fn(usize) -> ExtWeight, usize); 6] = [
        (AggId::C1, &|a| mm[a].one[0].val, 1),
        (AggId::C2, &|a| mm[a].one[1].val, 2),
        (AggId::C3, &|a| mm[a].one[2].val, 3),
        (AggId::B1, &|a| mates[a].slots[2], 2),
        (AggId::B3, &|a| mates[a].slots[2], 3),
        (AggId::A1, &|a| mates[a].slots[3], usize::MAX), // others free
    ];
    for (id, lead, zt) in singles {
        let mut best = AGG_NONE;
        for a in 0..q {
            let lv = lead(a);
            if !lv.is_finite() {
                continue;
            }
            let rest = if zt == usize::MAX {
                self::without(&allsum, mm[a].all.val)
            } else {
                self::without(&zsum[zt], mm[a].z[zt].val)
            };
            let v = lv + rest;
            if v < best.val {
                best = Agg { val: v, picks: Picks::One(a as u32) };
            }
        }
        aggs[id as usize] = best;
    }

    // Two mates labelled 1 (unordered), others at a z-threshold.
    let pairs: [(AggId, usize, usize); 2] = [(AggId::B2, 1, 2), (AggId::B4, 2, 3)];
    for (id, ot, zt) in pairs {
        let mut best = AGG_NONE;
        for a in 0..q {
            if !mm[a].one[ot].val.is_finite() {
                continue;
            }
            for b in a + 1..q {
                if !mm[b].one[ot].val.is_finite() {
                    continue;
                }
                let rest = zsum[zt].without(mm[a].z[zt].val).without(mm[b].z[zt].val).value();
                let v = mm[a].one[ot].val + mm[b].one[ot].val + rest;
                if v < best.val {
                    best = Agg { val: v, picks: Picks::Two(a as u32, b as u32) };
                }
            }
        }
        aggs[id as usize] = best;
    }

    // a2: a mate labelled 2 plus a distinct positive mate, others free.
    {
        let mut best = AGG_NONE;
        for a in 0..q {
            if !mates[a].slots[2].is_finite() {
                continue;
            }
            for b in 0..q {
                if b == a || !mm[b].pos.val.is_finite() {
                    continue;
                }
                let rest = allsum.without(mm[a].all.val).without(mm[b].all.val).value();
                let v = mates[a].slots[2] + mm[b].pos.val + rest;
                if v < best.val {
                    best = Agg { val: v, picks: Picks::Two(a as u32, b as u32) };
                }
            }
        }
        aggs[AggId::A2 as usize] = best;
    }

    // a3: three mates labelled 1, others free. The cubic work per block;
    // total O(sum of block sizes cubed) over a whole solve.
    {
        let mut best = AGG_NONE;
        for a in 0..q {
            if !mm[a].one[2].val.is_finite() {
                continue;
            }
            for b in a + 1..q {
                if !mm[b].one[2].val.is_finite() {
                    continue;
                }
                let ab = mm[a].one[2].val + mm[b].one[2].val;
                let sum_ab = allsum.without(mm[a].all.val).without(mm[b].all.val);
                for c in b + 1..q {
                    if !mm[c].one[2].val.is_finite() {
                        continue;
                    }
                    let v = ab + mm[c].one[2].val + sum_ab.without(mm[c].all.val).value();
                    if v < best.val {
                        best = Agg { val: v, picks: Picks::Three(a as u32, b as u32, c as u32) };
                    }
                }
            }
        }
        aggs[AggId::A3 as usize] = best;
    }

    ComposeCtx { mm, zsum, allsum, aggs }
}

fn without(sum: &ExcSum, x: ExtWeight) -> ExtWeight {
    sum.without(x).value()
}

/// The ten mate-side aggregates for one block, by supply class; see
/// [`Aggregates`]. Empty or insufficient mate sets yield `Infeasible`.
pub fn compute_aggregates(mates: &[StateVector]) -> Aggregates {
    let ctx = compose_ctx(mates);
    Aggregates {
        c1: ctx.agg(AggId::C1).val,
        c2: ctx.agg(AggId::C2).val,
        c3: ctx.agg(AggId::C3).val,
        b1: ctx.agg(AggId::B1).val,
        b2: ctx.agg(AggId::B2).val,
        b3: ctx.agg(AggId::B3).val,
        b4: ctx.agg(AggId::B4).val,
        a1: ctx.agg(AggId::A1).val,
        a2: ctx.agg(AggId::A2).val,
        a3: ctx.agg(AggId::A3).val,
    }
}

// ============================================================================
// Block composition
// ============================================================================

/// How the mates of a winning composition line are labelled.
#[derive(Clone, Copy)]
enum MatePlan {
    /// Every mate at its cheapest label-0 slot with pending demand <= t.
    Zs(usize),
    /// Every mate at its cheapest admissible slot (supply class >= 3 line
    /// with the distinguished mates elsewhere, or the slot-3 target).
    All,
    /// Distinguished mates per the aggregate, the rest per its others-set.
    Agg(AggId),
}

/// The slot each block vertex contributed to one finite composed slot:
/// `h_slot` for the anchor's previous vector, `mate_slots[i]` for the i-th
/// mate. Replaying them reproduces the composed value exactly.
#[derive(Clone, Debug)]
pub struct StateChoice {
    pub h_slot: u8,
    pub mate_slots: Vec<u8>,
}

/// Choices for every finite slot of a composed vector, used to reconstruct
/// witness labellings.
#[derive(Clone, Debug)]
pub struct BlockChoices {
    pub per_slot: [Option<StateChoice>; NUM_SLOTS],
}

/// Composes one clique block into its anchor: `h` is the anchor's vector
/// over its already-processed subgraph, `mates` the vectors of the other
/// block vertices. Returns the anchor's vector over the union.
///
/// Per-slot rules, written `h{set} + mates`, minimised over the lines
/// (classes are the mates' exact supply; `z(t)` is every mate at label 0
/// with pending demand <= t; aggregates as in [`Aggregates`]):
///
/// ```text
/// slot 0:  h{0}+z(0) | h{0,4}+c1 | h{0,4,5}+min(b1,b2) | h{0,4,5,6}+min(a1,a2,a3)
/// slot 1:  h{1}+z(1) | h{1,9}+c2 | h{1,9,10}+min(b3,b4) | h{1,9,10}+min(a1,a2,a3)
/// slot 2:  h{2} + min(z(2), c3, b3, b4, a1, a2, a3)
/// slot 3:  h{3} + (every mate free)
/// slot 4:  h{4}+z(0) | h{5}+c1 | h{6}+min(b1,b2)
/// slot 5:  h{5}+z(0) | h{6}+c1
/// slot 6:  h{6}+z(0)
/// slot 7:  h{7}+z(0) | h{8}+c1
/// slot 8:  h{8}+z(0)
/// slot 9:  h{9}+z(1) | h{10}+c2
/// slot 10: h{10}+z(1)
/// ```
///
/// The h-sets of the complete targets widen with the class because a line's
/// supply may also cover a *pending* anchor slot of demand <= class; the
/// pending targets pin the class exactly instead. Slots 7/8 use offset-0
/// aggregates (their contract is validity without the anchor), the relaxed
/// slots 9/10 the offset-1 ones.
pub fn compose_block_with_choices(
    h: &StateVector,
    mates: &[StateVector],
) -> (StateVector, BlockChoices) {
    use AggId::*;
    use MatePlan::{Agg as Ag, All, Zs};

    let ctx = compose_ctx(mates);
    let plan_val = |p: MatePlan| -> ExtWeight {
        match p {
            Zs(t) => ctx.zsum[t].value(),
            All => ctx.allsum.value(),
            Ag(id) => ctx.agg(id).val,
        }
    };

    type Line = (&'static [usize], MatePlan);
    let table: [&[Line]; NUM_SLOTS] = [
        &[
            (&[0], Zs(0)),
            (&[0, 4], Ag(C1)),
            (&[0, 4, 5], Ag(B1)),
            (&[0, 4, 5], Ag(B2)),
            (&[0, 4, 5, 6], Ag(A1)),
            (&[0, 4, 5, 6], Ag(A2)),
            (&[0, 4, 5, 6], Ag(A3)),
        ],
        &[
            (&[1], Zs(1)),
            (&[1, T7], Ag(C2)),
            (&[1, T7, T8], Ag(B3)),
            (&[1, T7, T8], Ag(B4)),
            (&[1, T7, T8], Ag(A1)),
            (&[1, T7, T8], Ag(A2)),
            (&[1, T7, T8], Ag(A3)),
        ],
        &[
            (&[2], Zs(2)),
            (&[2], Ag(C3)),
            (&[2], Ag(B3)),
            (&[2], Ag(B4)),
            (&[2], Ag(A1)),
            (&[2], Ag(A2)),
            (&[2], Ag(A3)),
        ],
        &[(&[3], All)],
        &[(&[4], Zs(0)), (&[5], Ag(C1)), (&[6], Ag(B1)), (&[6], Ag(B2))],
        &[(&[5], Zs(0)), (&[6], Ag(C1))],
        &[(&[6], Zs(0))],
        &[(&[7], Zs(0)), (&[8], Ag(C1))],
        &[(&[8], Zs(0))],
        &[(&[T7], Zs(1)), (&[T8], Ag(C2))],
        &[(&[T8], Zs(1))],
    ];

    let mut slots = [Infeasible; NUM_SLOTS];
    let mut choices = BlockChoices { per_slot: std::array::from_fn(|_| None) };
    for (target, lines) in table.iter().enumerate() {
        let mut best = Infeasible;
        let mut winner: Option<(u8, MatePlan)> = None;
        for &(hset, plan) in lines.iter() {
            let hp = h.min_over(hset);
            let v = hp.val + plan_val(plan);
            if v < best {
                best = v;
                winner = Some((hp.slot, plan));
            }
        }
        slots[target] = best;
        if best.is_finite() {
            let (h_slot, plan) = winner.unwrap();
            let mate_slots = materialize(&ctx, plan);
            debug_assert_eq!(
                mates
                    .iter()
                    .zip(&mate_slots)
                    .fold(h.slots[h_slot as usize], |acc, (m, &s)| acc + m.slots[s as usize]),
                best,
                "choice replay must reproduce slot {target}"
            );
            choices.per_slot[target] = Some(StateChoice { h_slot, mate_slots });
        }
    }
    (StateVector { slots }, choices)
}

/// [`compose_block_with_choices`] without the reconstruction data.
pub fn compose_block(h: &StateVector, mates: &[StateVector]) -> StateVector {
    compose_block_with_choices(h, mates).0
}

/// Per-mate slots for a winning line.
fn materialize(ctx: &ComposeCtx, plan: MatePlan) -> Vec<u8> {
    match plan {
        MatePlan::Zs(t) => ctx.mm.iter().map(|m| m.z[t].slot).collect(),
        MatePlan::All => ctx.mm.iter().map(|m| m.all.slot).collect(),
        MatePlan::Agg(id) => {
            // Others-set and distinguished slots per aggregate shape.
            let (zt, one_t) = match id {
                AggId::C1 => (Some(1), 0),
                AggId::C2 => (Some(2), 1),
                AggId::C3 => (Some(3), 2),
                AggId::B1 => (Some(2), 0),
                AggId::B2 => (Some(2), 1),
                AggId::B3 => (Some(3), 0),
                AggId::B4 => (Some(3), 2),
                AggId::A1 | AggId::A2 | AggId::A3 => (None, 2),
            };
            let mut out: Vec<u8> = ctx
                .mm
                .iter()
                .map(|m| match zt {
                    Some(t) => m.z[t].slot,
                    None => m.all.slot,
                })
                .collect();
            let agg = ctx.agg(id);
            match (id, agg.picks) {
                (AggId::C1 | AggId::C2 | AggId::C3, Picks::One(a)) => {
                    out[a as usize] = ctx.mm[a as usize].one[one_t].slot;
                }
                (AggId::B1 | AggId::B3, Picks::One(a)) => out[a as usize] = 2,
                (AggId::B2 | AggId::B4, Picks::Two(a, b)) => {
                    out[a as usize] = ctx.mm[a as usize].one[one_t].slot;
                    out[b as usize] = ctx.mm[b as usize].one[one_t].slot;
                }
                (AggId::A1, Picks::One(a)) => out[a as usize] = 3,
                (AggId::A2, Picks::Two(a, b)) => {
                    out[a as usize] = 2;
                    out[b as usize] = ctx.mm[b as usize].pos.slot;
                }
                (AggId::A3, Picks::Three(a, b, c)) => {
                    for x in [a, b, c] {
                        out[x as usize] = ctx.mm[x as usize].one[2].slot;
                    }
                }
                (id, picks) => unreachable!("finite aggregate {id:?} with picks {picks:?}"),
            }
            out
        }
    }
}

// ============================================================================
// Solving
// ============================================================================

/// An exact solution: the minimum weight and one labelling attaining it
/// (verified before being returned).
#[derive(Clone, Debug)]
pub struct Solution {
    pub weight: u64,
    pub labeling: Labeling,
}

/// One composition step as seen by [`solve_block_graph_traced`]: after
/// composing a block into `anchor`, the anchor's vector covers exactly the
/// vertices of `subtree` (sorted).
#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub anchor: VertexId,
    pub subtree: Vec<VertexId>,
    pub vector: StateVector,
}

/// Exact minimum-weight Roman {3}-dominating function of a block graph, in
/// time linear in the graph plus cubic in the block sizes. Fails with the
/// offending block if some block is not a clique. Disconnected inputs are
/// solved per component; the empty graph has weight 0.
pub fn solve_block_graph(g: &Graph) -> Result<Solution, NotBlockGraph> {
    let dec = blocks::decompose(g);
    blocks::check_block_graph(g, &dec)?;
    let steps = blocks::end_block_order(&dec);
    Ok(run_dp(g, &dec, &steps, &mut None))
}

/// [`solve_block_graph`] under a caller-supplied block processing order,
/// e.g. from [`blocks::random_end_block_order`]. The order must be a valid
/// peeling (each anchored block before the block on its anchor's far side).
pub fn solve_block_graph_with_order(
    g: &Graph,
    steps: &[PeelStep],
) -> Result<Solution, NotBlockGraph> {
    let dec = blocks::decompose(g);
    blocks::check_block_graph(g, &dec)?;
    Ok(run_dp(g, &dec, steps, &mut None))
}

/// [`solve_block_graph`] that also reports the anchor vector after every
/// composition step, for auditing the program against reference solvers.
pub fn solve_block_graph_traced(g: &Graph) -> Result<(Solution, Vec<TraceEntry>), NotBlockGraph> {
    let dec = blocks::decompose(g);
    blocks::check_block_graph(g, &dec)?;
    let steps = blocks::end_block_order(&dec);
    let mut trace = Some(Vec::new());
    let solution = run_dp(g, &dec, &steps, &mut trace);
    Ok((solution, trace.unwrap()))
}

struct Record {
    mates: Vec<VertexId>,
    choices: BlockChoices,
}

fn run_dp(
    g: &Graph,
    dec: &BlockDecomposition,
    steps: &[PeelStep],
    trace: &mut Option<Vec<TraceEntry>>,
) -> Solution {
    let n = g.n();
    let mut sv = vec![StateVector::leaf(); n];
    let mut recs: Vec<Vec<Record>> = (0..n).map(|_| Vec::new()).collect();
    let mut subtree: Vec<Vec<VertexId>> = if trace.is_some() {
        (0..n as VertexId).map(|v| vec![v]).collect()
    } else {
        Vec::new()
    };
    let mut roots: Vec<VertexId> = Vec::new();

    for step in steps {
        let bverts = &dec.blocks[step.block];
        let anchor = step.anchor.unwrap_or(bverts[0]);
        let mates: Vec<VertexId> = bverts.iter().copied().filter(|&v| v != anchor).collect();
        let mvecs: Vec<StateVector> = mates.iter().map(|&m| sv[m as usize]).collect();
        let (nv, choices) = compose_block_with_choices(&sv[anchor as usize], &mvecs);
        sv[anchor as usize] = nv;
        recs[anchor as usize].push(Record { mates: mates.clone(), choices });
        if let Some(entries) = trace.as_mut() {
            let mut verts = std::mem::take(&mut subtree[anchor as usize]);
            for &m in &mates {
                verts.extend(std::mem::take(&mut subtree[m as usize]));
            }
            verts.sort_unstable();
            subtree[anchor as usize] = verts.clone();
            entries.push(TraceEntry { anchor, subtree: verts, vector: nv });
        }
        if step.anchor.is_none() {
            roots.push(anchor);
        }
    }

    // Unwind the recorded choices from each component root down to leaves.
    let mut labels = vec![u8::MAX; n];
    let mut total = 0u64;
    let mut stack: Vec<(VertexId, usize)> = Vec::new();
    for &root in &roots {
        let best = sv[root as usize].best_complete();
        let slot = (0..4).find(|&i| sv[root as usize].slots[i] == best).unwrap();
        total += best.unwrap_finite();
        stack.push((root, slot));
    }
    while let Some((v, mut slot)) = stack.pop() {
        while let Some(rec) = recs[v as usize].pop() {
            let ch = rec.choices.per_slot[slot]
                .as_ref()
                .expect("finite chain slot must carry a choice");
            for (&m, &ms) in rec.mates.iter().zip(&ch.mate_slots) {
                stack.push((m, ms as usize));
            }
            slot = ch.h_slot as usize;
        }
        debug_assert!(LEAF_SLOTS.contains(&slot), "chain bottomed out in slot {slot}");
        labels[v as usize] = ROOT_LABEL[slot];
    }
    debug_assert!(labels.iter().all(|&l| l <= 3));

    let labeling = Labeling(labels);
    let report = verify_labeling(g, &labeling).expect("reconstructed labeling is well-formed");
    assert!(report.valid, "internal error: reconstructed labeling violates demands");
    assert_eq!(report.weight, total, "internal error: witness weight differs from optimum");
    Solution { weight: total, labeling }
}

// ============================================================================
// Tests
// ============================================================================
