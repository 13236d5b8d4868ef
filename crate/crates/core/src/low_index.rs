//! Low-index subgroup search: all subgroups of index at most N up to
//! conjugacy, as complete coset tables.
//!
//! Backtracking in standard Sims form. Cells of the partial table are filled
//! in row-major scan order; after every definition the relators are scanned
//! eagerly to force deductions or detect contradictions. A branch is pruned
//! as soon as renumbering the partial table from some other base coset is
//! already lexicographically smaller, so each conjugacy class is emitted
//! exactly once, by its lexicographically least table under breadth-first
//! renumbering.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::perm::Permutation;
use crate::presentation::{GroupPresentation, Word};
use crate::todd_coxeter::{inv, CosetTable};

/// Hard cap on the index; the combinatorics explode well before this.
pub const MAX_LOW_INDEX: usize = 64;

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowIndexError {
    ZeroIndex,
    IndexCapExceeded { requested: usize },
}

impl fmt::Display for LowIndexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowIndexError::ZeroIndex => write!(f, "max_index must be at least 1"),
            LowIndexError::IndexCapExceeded { requested } => {
                write!(f, "max_index {requested} exceeds the cap of {MAX_LOW_INDEX}")
            }
        }
    }
}

impl core::error::Error for LowIndexError {}

/// Enumerates one complete coset table per conjugacy class of subgroups of
/// index at most `max_index`, in a deterministic order: by index, then by
/// table entries.
pub fn low_index_subgroups(
    pres: &GroupPresentation,
    max_index: usize,
) -> Result<Vec<CosetTable>, LowIndexError> {
    if max_index == 0 {
        return Err(LowIndexError::ZeroIndex);
    }
    if max_index > MAX_LOW_INDEX {
        return Err(LowIndexError::IndexCapExceeded {
            requested: max_index,
        });
    }
    let width = 2 * pres.num_generators();
    let ctx = Ctx {
        width,
        max_index,
        relators: pres.relators().iter().map(|r| r.letters().collect()).collect(),
    };
    let mut state = State {
        table: alloc::vec![UNDEF; width],
        num_cosets: 1,
        trail: Vec::new(),
        results: Vec::new(),
    };
    search(&ctx, &mut state, 0);
    let mut tables: Vec<CosetTable> = state
        .results
        .into_iter()
        .map(|(num_cosets, entries)| {
            let t = CosetTable::from_raw(pres.num_generators(), num_cosets, entries, Vec::new());
            debug_assert!(t.validate(pres).is_ok());
            t
        })
        .collect();
    tables.sort();
    Ok(tables)
}

struct Ctx {
    width: usize,
    max_index: usize,
    relators: Vec<Vec<usize>>,
}

struct State {
    table: Vec<u32>,
    num_cosets: usize,
    /// Cell indices filled since the enclosing branch point, for undo.
    trail: Vec<usize>,
    results: Vec<(usize, Vec<u32>)>,
}

impl State {
    #[inline]
    fn get(&self, coset: usize, letter: usize, width: usize) -> u32 {
        self.table[coset * width + letter]
    }

    fn set_cell(&mut self, coset: usize, letter: usize, value: u32, width: usize) {
        let idx = coset * width + letter;
        debug_assert_eq!(self.table[idx], UNDEF);
        self.table[idx] = value;
        self.trail.push(idx);
    }
}

fn search(ctx: &Ctx, state: &mut State, scan_from: usize) {
    let next_undefined = (scan_from..state.num_cosets * ctx.width)
        .find(|&i| state.table[i] == UNDEF);
    let Some(cell) = next_undefined else {
        emit(ctx, state);
        return;
    };
    let coset = cell / ctx.width;
    let letter = cell % ctx.width;
    for d in 0..state.num_cosets {
        if state.get(d, inv(letter), ctx.width) == UNDEF {
            try_candidate(ctx, state, coset, letter, d, false, cell);
        }
    }
    if state.num_cosets < ctx.max_index {
        let d = state.num_cosets;
        try_candidate(ctx, state, coset, letter, d, true, cell);
    }
}

fn try_candidate(
    ctx: &Ctx,
    state: &mut State,
    coset: usize,
    letter: usize,
    d: usize,
    is_new: bool,
    cell: usize,
) {
    let trail_mark = state.trail.len();
    if is_new {
        state.num_cosets += 1;
        state.table.extend(core::iter::repeat(UNDEF).take(ctx.width));
    }
    state.set_cell(coset, letter, d as u32, ctx.width);
    state.set_cell(d, inv(letter), coset as u32, ctx.width);

    if propagate(ctx, state) && may_be_canonical(ctx, state) {
        search(ctx, state, cell);
    }

    for idx in state.trail.drain(trail_mark..) {
        state.table[idx] = UNDEF;
    }
    if is_new {
        state.num_cosets -= 1;
        state.table.truncate(state.num_cosets * ctx.width);
    }
}

enum ScanOutcome {
    Fine,
    Deduced,
    Contradiction,
}

/// Forces relator scans to a fixpoint. Returns false on contradiction.
fn propagate(ctx: &Ctx, state: &mut State) -> bool {
    loop {
        let mut deduced = false;
        for coset in 0..state.num_cosets {
            for relator in &ctx.relators {
                match scan(ctx, state, coset, relator) {
                    ScanOutcome::Contradiction => return false,
                    ScanOutcome::Deduced => deduced = true,
                    ScanOutcome::Fine => {}
                }
            }
        }
        if !deduced {
            return true;
        }
    }
}

/// Deduction-only relator scan: fills a one-letter gap, rejects a mismatch,
/// and leaves wider gaps alone (the search, not the scan, defines cosets).
fn scan(ctx: &Ctx, state: &mut State, start: usize, word: &[usize]) -> ScanOutcome {
    let width = ctx.width;
    let mut f = start;
    let mut i = 0;
    let mut b = start;
    let mut j = word.len();
    while i < j {
        match state.get(f, word[i], width) {
            UNDEF => break,
            next => {
                f = next as usize;
                i += 1;
            }
        }
    }
    if i == j {
        return if f == b {
            ScanOutcome::Fine
        } else {
            ScanOutcome::Contradiction
        };
    }
    while j > i {
        match state.get(b, inv(word[j - 1]), width) {
            UNDEF => break,
            prev => {
                b = prev as usize;
                j -= 1;
            }
        }
    }
    if j == i {
        return if f == b {
            ScanOutcome::Fine
        } else {
            ScanOutcome::Contradiction
        };
    }
    if j == i + 1 {
        state.set_cell(f, word[i], b as u32, width);
        state.set_cell(b, inv(word[i]), f as u32, width);
        return ScanOutcome::Deduced;
    }
    ScanOutcome::Fine
}

/// First-in-class test: false when renumbering the partial table from some
/// alternative base coset is already lexicographically smaller, in which case
/// no completion of this branch can be the canonical class representative.
fn may_be_canonical(ctx: &Ctx, state: &State) -> bool {
    for base in 1..state.num_cosets {
        if rebase_compare(ctx, state, base) == Ordering::Less {
            return false;
        }
    }
    true
}

/// Compares the table renumbered breadth-first from `base` against the table
/// itself, cell by cell in scan order. Undefined entries on either side end
/// the comparison as `Equal` (no verdict).
fn rebase_compare(ctx: &Ctx, state: &State, base: usize) -> Ordering {
    let n = state.num_cosets;
    let width = ctx.width;
    let mut to_old = alloc::vec![UNDEF; n];
    let mut to_new = alloc::vec![UNDEF; n];
    to_old[0] = base as u32;
    to_new[base] = 0;
    let mut assigned = 1;
    let mut new_c = 0;
    while new_c < assigned {
        for letter in 0..width {
            let old = to_old[new_c] as usize;
            let target_old = state.get(old, letter, width);
            if target_old == UNDEF {
                return Ordering::Equal;
            }
            let mut target_new = to_new[target_old as usize];
            if target_new == UNDEF {
                target_new = assigned as u32;
                to_old[assigned] = target_old;
                to_new[target_old as usize] = target_new;
                assigned += 1;
            }
            let own = state.get(new_c, letter, width);
            if own == UNDEF {
                return Ordering::Equal;
            }
            match target_new.cmp(&own) {
                Ordering::Equal => {}
                verdict => return verdict,
            }
        }
        new_c += 1;
    }
    Ordering::Equal
}

fn emit(ctx: &Ctx, state: &mut State) {
    // On a complete table the rebase comparison is decisive, so this keeps
    // exactly the least table of each conjugacy class.
    for base in 1..state.num_cosets {
        if rebase_compare(ctx, state, base) == Ordering::Less {
            return;
        }
    }
    state.results.push((state.num_cosets, state.table.clone()));
}

/// A complete table describes a normal subgroup exactly when the coset action
/// is regular: the permutation group generated by the action has order equal
/// to its degree.
pub fn is_normal(table: &CosetTable) -> bool {
    let n = table.num_cosets();
    let gens = table.permutation_action();
    let identity = Permutation::identity(n);
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    let mut frontier = alloc::vec![identity.clone()];
    seen.insert(identity);
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let q = p.compose(g);
            if !seen.contains(&q) {
                if seen.len() >= n {
                    // Transitive of degree n with order > n: not regular.
                    return false;
                }
                seen.insert(q.clone());
                frontier.push(q);
            }
        }
    }
    debug_assert_eq!(seen.len(), n, "transitive action of order at most degree");
    true
}
