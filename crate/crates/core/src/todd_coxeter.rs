//! Todd–Coxeter coset enumeration.
//!
//! The enumerator is HLT-style: it scans every relator from every coset,
//! filling gaps by defining new cosets, and processes coincidences
//! immediately through a union-find over cosets. Finished tables are
//! compacted and renumbered breadth-first from coset 1 in the fixed letter
//! order `a, a^-1, t, t^-1, ...`, so a given input always produces the same
//! table.
//!
//! Coset enumeration is a semi-decision procedure: running out of capacity
//! says nothing about whether the index is infinite.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::Permutation;
use crate::presentation::{GroupPresentation, Word};

/// Default coset capacity for the command line and convenience callers.
pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

/// Inverse letter: generator letters are `2g`, inverse letters `2g + 1`.
#[inline]
pub(crate) fn inv(letter: usize) -> usize {
    letter ^ 1
}

/// A complete coset table: the action of a finitely presented group on the
/// cosets of a finite-index subgroup. Rows are cosets (0-based internally,
/// 1-based in dumps), columns are letters in the fixed order
/// `g0, g0^-1, g1, g1^-1, ...`.
///
/// Tables constructed by this crate are always complete and collapsed:
/// every entry is defined, columns are permutations, and
/// `table[c][l] = d` implies `table[d][l^-1] = c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CosetTable {
    num_gens: usize,
    num_cosets: usize,
    entries: Vec<u32>,
    subgroup_gens: Vec<Word>,
}

impl CosetTable {
    pub(crate) fn from_raw(
        num_gens: usize,
        num_cosets: usize,
        entries: Vec<u32>,
        subgroup_gens: Vec<Word>,
    ) -> Self {
        debug_assert_eq!(entries.len(), num_cosets * 2 * num_gens);
        debug_assert!(entries.iter().all(|&e| (e as usize) < num_cosets));
        let table = CosetTable {
            num_gens,
            num_cosets,
            entries,
            subgroup_gens,
        };
        debug_assert!(table.involution_consistent());
        table
    }

    pub fn num_cosets(&self) -> usize {
        self.num_cosets
    }

    pub fn num_generators(&self) -> usize {
        self.num_gens
    }

    fn width(&self) -> usize {
        2 * self.num_gens
    }

    /// Subgroup generators this table was enumerated over (empty for tables
    /// from the low-index search).
    pub fn subgroup_generators(&self) -> &[Word] {
        &self.subgroup_gens
    }

    /// The coset reached from `coset` by one letter.
    pub fn target(&self, coset: usize, letter: usize) -> usize {
        self.entries[coset * self.width() + letter] as usize
    }

    /// Traces a word from a starting coset.
    pub fn trace(&self, start: usize, word: &Word) -> usize {
        word.letters().fold(start, |c, l| self.target(c, l))
    }

    /// Whether a word traces back to its starting coset.
    pub fn closes(&self, start: usize, word: &Word) -> bool {
        self.trace(start, word) == start
    }

    /// `table[c][l] = d` implies `table[d][l^-1] = c` for every entry.
    pub fn involution_consistent(&self) -> bool {
        (0..self.num_cosets).all(|c| {
            (0..self.width()).all(|l| self.target(self.target(c, l), inv(l)) == c)
        })
    }

    /// Full post-hoc closure check: every relator closes from every coset and
    /// every subgroup generator closes from coset 1.
    pub fn validate(&self, pres: &GroupPresentation) -> Result<(), TableDefect> {
        if self.num_gens != pres.num_generators() {
            return Err(TableDefect::GeneratorCountMismatch);
        }
        if !self.involution_consistent() {
            return Err(TableDefect::InvolutionBroken);
        }
        for (i, relator) in pres.relators().iter().enumerate() {
            for coset in 0..self.num_cosets {
                if !self.closes(coset, relator) {
                    return Err(TableDefect::RelatorOpen { relator: i, coset });
                }
            }
        }
        for (i, word) in self.subgroup_gens.iter().enumerate() {
            if !self.closes(0, word) {
                return Err(TableDefect::SubgroupGeneratorOpen { word: i });
            }
        }
        Ok(())
    }

    /// One permutation per generator, given by the row transitions. The group
    /// they generate acts transitively on the cosets.
    pub fn permutation_action(&self) -> Vec<Permutation> {
        (0..self.num_gens)
            .map(|g| {
                let images = (0..self.num_cosets)
                    .map(|c| self.target(c, 2 * g) as u32)
                    .collect();
                Permutation::from_images(images).expect("complete table columns are bijections")
            })
            .collect()
    }

    /// Dump format: one line per coset, tab-separated 1-based entries in
    /// fixed letter order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in 0..self.num_cosets {
            for l in 0..self.width() {
                if l > 0 {
                    out.push('\t');
                }
                out.push_str(itoa(self.target(c, l) + 1).as_str());
            }
            out.push('\n');
        }
        out
    }

    pub(crate) fn entries(&self) -> &[u32] {
        &self.entries
    }
}

fn itoa(n: usize) -> String {
    alloc::format!("{n}")
}

/// The enumeration ran out of room; the index may be larger than the cap or
/// infinite — this error makes no claim either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityExceeded {
    /// Cosets allocated when the run was abandoned (including collapsed ones).
    pub cosets_defined: usize,
    pub max_cosets: usize,
}

impl fmt::Display for CapacityExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coset enumeration exceeded capacity: {} cosets defined, cap {} (index unknown, possibly infinite)",
            self.cosets_defined, self.max_cosets
        )
    }
}

impl core::error::Error for CapacityExceeded {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableDefect {
    GeneratorCountMismatch,
    InvolutionBroken,
    RelatorOpen { relator: usize, coset: usize },
    SubgroupGeneratorOpen { word: usize },
}

impl fmt::Display for TableDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableDefect::GeneratorCountMismatch => write!(f, "generator count mismatch"),
            TableDefect::InvolutionBroken => write!(f, "inverse-letter consistency broken"),
            TableDefect::RelatorOpen { relator, coset } => {
                write!(f, "relator {relator} does not close from coset {coset}")
            }
            TableDefect::SubgroupGeneratorOpen { word } => {
                write!(f, "subgroup generator {word} does not return to coset 1")
            }
        }
    }
}

impl core::error::Error for TableDefect {}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// presented group. On success the table is complete and collapsed and
/// `num_cosets` equals the subgroup's index.
///
/// Subgroup words must be words over `pres`'s generators.
pub fn coset_enumerate(
    pres: &GroupPresentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, CapacityExceeded> {
    for w in subgroup {
        if let Some(g) = w.max_generator() {
            assert!(
                g < pres.num_generators(),
                "subgroup word uses generator {g} outside the presentation"
            );
        }
    }
    let mut enumerator = Enumerator::new(pres, max_cosets);
    enumerator.run(subgroup)?;
    let table = enumerator.finish(subgroup.to_vec());
    table
        .validate(pres)
        .expect("enumerator produced a defective table");
    Ok(table)
}

struct Enumerator {
    width: usize,
    max_cosets: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    dead_queue: VecDeque<u32>,
    relators: Vec<Vec<usize>>,
}

impl Enumerator {
    fn new(pres: &GroupPresentation, max_cosets: usize) -> Self {
        assert!(max_cosets >= 1, "need room for at least one coset");
        assert!(
            max_cosets < UNDEF as usize,
            "coset capacity must fit in u32"
        );
        let width = 2 * pres.num_generators();
        let mut e = Enumerator {
            width,
            max_cosets,
            table: Vec::new(),
            parent: Vec::new(),
            dead_queue: VecDeque::new(),
            relators: pres.relators().iter().map(|r| r.letters().collect()).collect(),
        };
        e.alloc_coset();
        e
    }

    fn alloc_coset(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.table.extend(core::iter::repeat(UNDEF).take(self.width));
        id
    }

    fn cosets_defined(&self) -> usize {
        self.parent.len()
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let grand = self.parent[self.parent[c as usize] as usize];
            self.parent[c as usize] = grand;
            c = grand;
        }
        c
    }

    #[inline]
    fn get(&self, c: u32, l: usize) -> u32 {
        self.table[c as usize * self.width + l]
    }

    #[inline]
    fn set(&mut self, c: u32, l: usize, v: u32) {
        self.table[c as usize * self.width + l] = v;
    }

    /// Resolved table read: follows the union-find on the stored target.
    fn target(&mut self, c: u32, l: usize) -> u32 {
        match self.get(c, l) {
            UNDEF => UNDEF,
            d => self.rep(d),
        }
    }

    fn define(&mut self, c: u32, l: usize) -> Result<u32, CapacityExceeded> {
        if self.cosets_defined() >= self.max_cosets {
            return Err(CapacityExceeded {
                cosets_defined: self.cosets_defined(),
                max_cosets: self.max_cosets,
            });
        }
        let d = self.alloc_coset();
        self.set(c, l, d);
        self.set(d, inv(l), c);
        Ok(d)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.dead_queue.push_back(kill);
    }

    /// Processes the coincidence queue to a fixpoint, transferring rows of
    /// dead cosets onto their representatives.
    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(dead) = self.dead_queue.pop_front() {
            for l in 0..self.width {
                let f = self.get(dead, l);
                if f == UNDEF {
                    continue;
                }
                // The stored back-reference still names the dead coset.
                if self.get(f, inv(l)) == dead {
                    self.set(f, inv(l), UNDEF);
                }
                let mu = self.rep(dead);
                let nu = self.rep(f);
                match self.target(mu, l) {
                    UNDEF => self.set(mu, l, nu),
                    existing => self.merge(nu, existing),
                }
                let nu = self.rep(f);
                let mu = self.rep(dead);
                match self.target(nu, inv(l)) {
                    UNDEF => self.set(nu, inv(l), mu),
                    existing => self.merge(mu, existing),
                }
            }
        }
    }

    /// Scans a word from `start` and forces it to close, defining cosets for
    /// any gap and recording a coincidence if both ends meet on different
    /// cosets.
    fn scan_and_fill(&mut self, start: u32, word: &[usize]) -> Result<(), CapacityExceeded> {
        let mut f = start;
        let mut i = 0;
        let mut b = start;
        let mut j = word.len();
        loop {
            while i < j {
                match self.target(f, word[i]) {
                    UNDEF => break,
                    next => {
                        f = next;
                        i += 1;
                    }
                }
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                match self.target(b, inv(word[j - 1])) {
                    UNDEF => break,
                    prev => {
                        b = prev;
                        j -= 1;
                    }
                }
            }
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                // Deduction: a single undefined edge bridges the scan.
                self.set(f, word[i], b);
                self.set(b, inv(word[i]), f);
                return Ok(());
            }
            f = self.define(f, word[i])?;
            i += 1;
        }
    }

    fn run(&mut self, subgroup: &[Word]) -> Result<(), CapacityExceeded> {
        for w in subgroup {
            let letters: Vec<usize> = w.letters().collect();
            if letters.is_empty() {
                continue;
            }
            let start = self.rep(0);
            self.scan_and_fill(start, &letters)?;
        }
        let mut c: u32 = 0;
        while (c as usize) < self.cosets_defined() {
            if !self.is_live(c) {
                c += 1;
                continue;
            }
            for r in 0..self.relators.len() {
                let word = core::mem::take(&mut self.relators[r]);
                let result = self.scan_and_fill(c, &word);
                self.relators[r] = word;
                result?;
                if !self.is_live(c) {
                    break;
                }
            }
            if self.is_live(c) {
                for l in 0..self.width {
                    if self.target(c, l) == UNDEF {
                        self.define(c, l)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    /// Compacts live cosets and renumbers them breadth-first from the coset
    /// of the subgroup in fixed letter order.
    fn finish(&mut self, subgroup_gens: Vec<Word>) -> CosetTable {
        let total = self.cosets_defined();
        let mut order: Vec<u32> = alloc::vec![UNDEF; total];
        let mut bfs: Vec<u32> = Vec::new();
        let root = self.rep(0);
        order[root as usize] = 0;
        bfs.push(root);
        let mut head = 0;
        while head < bfs.len() {
            let c = bfs[head];
            head += 1;
            for l in 0..self.width {
                let d = self.target(c, l);
                debug_assert_ne!(d, UNDEF, "finished table must be complete");
                if order[d as usize] == UNDEF {
                    order[d as usize] = bfs.len() as u32;
                    bfs.push(d);
                }
            }
        }
        let live = bfs.len();
        debug_assert_eq!(
            live,
            (0..total).filter(|&c| self.is_live(c as u32)).count(),
            "all live cosets are reachable from the subgroup coset"
        );
        let mut entries = alloc::vec![UNDEF; live * self.width];
        for (new_c, &old_c) in bfs.iter().enumerate() {
            for l in 0..self.width {
                let d = self.target(old_c, l);
                entries[new_c * self.width + l] = order[d as usize];
            }
        }
        CosetTable::from_raw(self.width / 2, live, entries, subgroup_gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::BsParams;
    use alloc::vec;

    fn pres(text: &str) -> GroupPresentation {
        GroupPresentation::parse(text).unwrap()
    }

    #[test]
    fn cyclic_five_over_trivial_subgroup() {
        let p = pres("< a | a^5 >");
        let t = coset_enumerate(&p, &[], 100).unwrap();
        assert_eq!(t.num_cosets(), 5);
        let action = t.permutation_action();
        assert_eq!(action.len(), 1);
        assert_eq!(action[0].order(), 5);
        assert_eq!(action[0].cycles().len(), 1);
    }

    #[test]
    fn symmetric_three_has_six_cosets() {
        let p = pres("< a, b | a^2, b^3, a b a b >");
        let t = coset_enumerate(&p, &[], 100).unwrap();
        assert_eq!(t.num_cosets(), 6);
    }

    #[test]
    fn bs_one_two_mod_a_and_t_squared() {
        let p = GroupPresentation::baumslag_solitar(BsParams::new(1, 2).unwrap());
        let a = Word::new([(0, 1)]).unwrap();
        let t2 = Word::new([(1, 2)]).unwrap();
        let t = coset_enumerate(&p, &[a, t2], 1000).unwrap();
        assert_eq!(t.num_cosets(), 2);
        let action = t.permutation_action();
        assert!(action[0].is_identity());
        assert_eq!(action[1].order(), 2);
    }

    #[test]
    fn whole_group_subgroup_gives_identity_action() {
        let p = pres("< a, t | >");
        let a = Word::new([(0, 1)]).unwrap();
        let t = Word::new([(1, 1)]).unwrap();
        let table = coset_enumerate(&p, &[a, t], 100).unwrap();
        assert_eq!(table.num_cosets(), 1);
        assert!(table.permutation_action().iter().all(Permutation::is_identity));
    }

    #[test]
    fn capacity_exceeded_is_not_a_verdict() {
        // BS(2,3) over the trivial subgroup has infinite index; the failure
        // reports the cap, nothing more.
        let p = GroupPresentation::baumslag_solitar(BsParams::new(2, 3).unwrap());
        let err = coset_enumerate(&p, &[], 50).unwrap_err();
        assert_eq!(err.max_cosets, 50);
        assert!(err.cosets_defined >= 50);
    }

    #[test]
    fn result_stable_once_capacity_suffices() {
        let p = pres("< a, b | a^2, b^3, a b a b >");
        let small = coset_enumerate(&p, &[], 30).unwrap();
        let large = coset_enumerate(&p, &[], 10_000).unwrap();
        assert_eq!(small, large);
    }

    #[test]
    fn relators_close_from_every_coset() {
        let p = pres("< a, b | a^4, b^2, a b a b >");
        let t = coset_enumerate(&p, &[], 100).unwrap();
        assert_eq!(t.num_cosets(), 8);
        for r in p.relators() {
            for c in 0..t.num_cosets() {
                assert!(t.closes(c, r));
            }
        }
        assert!(t.involution_consistent());
    }

    #[test]
    fn index_two_subgroup_of_infinite_group() {
        // <a^2, b^2, ab> has index 2 in the free group <a, b | >.
        let p = pres("< a, b | >");
        let sub = vec![
            Word::new([(0, 2)]).unwrap(),
            Word::new([(1, 2)]).unwrap(),
            Word::new([(0, 1), (1, 1)]).unwrap(),
        ];
        let t = coset_enumerate(&p, &sub, 100).unwrap();
        assert_eq!(t.num_cosets(), 2);
    }

    #[test]
    fn dump_is_one_based_and_tab_separated() {
        let p = pres("< a | a^3 >");
        let t = coset_enumerate(&p, &[], 10).unwrap();
        assert_eq!(t.dump(), "2\t3\n3\t1\n1\t2\n");
    }

    #[test]
    fn permutations_satisfy_relators() {
        let p = pres("< a, b | a^2, b^3, a b a b >");
        let t = coset_enumerate(&p, &[], 100).unwrap();
        let action = t.permutation_action();
        for r in p.relators() {
            assert!(crate::perm::evaluate_word(r, &action, t.num_cosets()).is_identity());
        }
    }
}
