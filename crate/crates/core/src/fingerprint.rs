//! Truncated finite-quotient fingerprints `C_N(G)`: the isomorphism classes
//! of quotients of order at most N, with representative witnesses.
//!
//! Quotients are harvested from the regular actions among the low-index
//! coset tables: a quotient of order n acts regularly on n points, so the
//! normal subgroups of index at most N are exactly the regular tables of the
//! low-index search. Class identity is certified isomorphism; the screening
//! key is only a filter and a sort key.

use alloc::vec::Vec;
use core::fmt;

use crate::low_index::{is_normal, low_index_subgroups, LowIndexError, MAX_LOW_INDEX};
use crate::perm::{are_isomorphic, CapExceeded, IsoClassKey, PermGroup, Permutation};
use crate::presentation::GroupPresentation;
use crate::todd_coxeter::CosetTable;

/// Fingerprints are capped at order 64.
pub const MAX_FINGERPRINT_ORDER: usize = 64;

/// Orders for which the exhaustive Cayley-table catalog is feasible.
pub const MAX_CATALOG_ORDER: usize = 8;

/// A finite quotient G/K presented as a regular permutation group together
/// with the coset table it came from. The generator images index into the
/// source presentation's generator list and satisfy all of its relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuotient {
    group: PermGroup,
    source_table: CosetTable,
}

impl FiniteQuotient {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Order of the quotient (equals the permutation degree: the action is
    /// regular).
    pub fn order(&self) -> usize {
        self.group.degree()
    }

    /// One permutation per presentation generator.
    pub fn gen_images(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn source_table(&self) -> &CosetTable {
        &self.source_table
    }
}

/// One isomorphism class in a fingerprint: the screening key and a
/// representative quotient.
#[derive(Debug, Clone)]
pub struct FingerprintClass {
    pub key: IsoClassKey,
    pub quotient: FiniteQuotient,
}

/// The truncated fingerprint `C_N(G)`, classes sorted by (order, key).
#[derive(Debug, Clone)]
pub struct Fingerprint {
    presentation: GroupPresentation,
    max_order: usize,
    classes: Vec<FingerprintClass>,
}

impl Fingerprint {
    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn classes(&self) -> &[FingerprintClass] {
        &self.classes
    }

    /// Representative quotients of one given order.
    pub fn classes_of_order(&self, order: usize) -> impl Iterator<Item = &FingerprintClass> {
        self.classes.iter().filter(move |c| c.key.order == order as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FingerprintError {
    ZeroOrder,
    OrderCapExceeded { requested: usize },
    CatalogCapExceeded { requested: usize },
    MaxOrderMismatch { left: usize, right: usize },
    LowIndex(LowIndexError),
    GroupCap(CapExceeded),
}

impl fmt::Display for FingerprintError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FingerprintError::ZeroOrder => write!(f, "max_order must be at least 1"),
            FingerprintError::OrderCapExceeded { requested } => write!(
                f,
                "max_order {requested} exceeds the fingerprint cap of {MAX_FINGERPRINT_ORDER}"
            ),
            FingerprintError::CatalogCapExceeded { requested } => write!(
                f,
                "catalog order {requested} exceeds the exhaustive-enumeration cap of {MAX_CATALOG_ORDER}"
            ),
            FingerprintError::MaxOrderMismatch { left, right } => write!(
                f,
                "fingerprints truncated at different orders: {left} vs {right}"
            ),
            FingerprintError::LowIndex(e) => write!(f, "{e}"),
            FingerprintError::GroupCap(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FingerprintError {}

impl From<LowIndexError> for FingerprintError {
    fn from(e: LowIndexError) -> Self {
        FingerprintError::LowIndex(e)
    }
}

impl From<CapExceeded> for FingerprintError {
    fn from(e: CapExceeded) -> Self {
        FingerprintError::GroupCap(e)
    }
}

/// Assembles `C_N(G)` for the presented group: the regular actions among the
/// low-index tables, deduplicated by certified isomorphism.
pub fn compute_fingerprint(
    pres: &GroupPresentation,
    max_order: usize,
) -> Result<Fingerprint, FingerprintError> {
    if max_order == 0 {
        return Err(FingerprintError::ZeroOrder);
    }
    if max_order > MAX_FINGERPRINT_ORDER {
        return Err(FingerprintError::OrderCapExceeded {
            requested: max_order,
        });
    }
    debug_assert!(MAX_FINGERPRINT_ORDER <= MAX_LOW_INDEX);
    let tables = low_index_subgroups(pres, max_order)?;
    let mut classes: Vec<FingerprintClass> = Vec::new();
    for table in tables {
        if !is_normal(&table) {
            continue;
        }
        let group = PermGroup::new(table.num_cosets(), table.permutation_action())
            .expect("coset actions are valid permutation groups");
        let key = group.iso_key()?;
        let mut duplicate = false;
        for existing in classes.iter().filter(|c| c.key == key) {
            if are_isomorphic(existing.quotient.group(), &group)? {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            classes.push(FingerprintClass {
                key,
                quotient: FiniteQuotient {
                    group,
                    source_table: table,
                },
            });
        }
    }
    // Stable sort: within equal keys the low-index order is kept, which is
    // itself deterministic.
    classes.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(Fingerprint {
        presentation: pres.clone(),
        max_order,
        classes,
    })
}

/// Classes present on only one side, matched across by certified isomorphism.
#[derive(Debug, Clone)]
pub struct FingerprintDiff {
    pub only_left: Vec<FingerprintClass>,
    pub only_right: Vec<FingerprintClass>,
    pub common_count: usize,
}

impl FingerprintDiff {
    pub fn is_empty(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }
}

pub fn diff_fingerprints(
    left: &Fingerprint,
    right: &Fingerprint,
) -> Result<FingerprintDiff, FingerprintError> {
    if left.max_order != right.max_order {
        return Err(FingerprintError::MaxOrderMismatch {
            left: left.max_order,
            right: right.max_order,
        });
    }
    let mut matched = alloc::vec![false; right.classes.len()];
    let mut only_left = Vec::new();
    let mut common_count = 0;
    for lc in &left.classes {
        let mut found = false;
        for (j, rc) in right.classes.iter().enumerate() {
            if matched[j] || rc.key != lc.key {
                continue;
            }
            if are_isomorphic(lc.quotient.group(), rc.quotient.group())? {
                matched[j] = true;
                found = true;
                break;
            }
        }
        if found {
            common_count += 1;
        } else {
            only_left.push(lc.clone());
        }
    }
    let only_right = right
        .classes
        .iter()
        .enumerate()
        .filter(|(j, _)| !matched[*j])
        .map(|(_, c)| c.clone())
        .collect();
    Ok(FingerprintDiff {
        only_left,
        only_right,
        common_count,
    })
}

/// One regular permutation group per isomorphism class of groups of order at
/// most `max_order`, built by exhaustive Cayley-table enumeration with
/// incremental associativity checking, then deduplicated by certified
/// isomorphism. All quotient-independent: this is the test oracle's ground
/// truth for small orders.
pub fn small_group_catalog(max_order: usize) -> Result<Vec<PermGroup>, FingerprintError> {
    if max_order == 0 {
        return Err(FingerprintError::ZeroOrder);
    }
    if max_order > MAX_CATALOG_ORDER {
        return Err(FingerprintError::CatalogCapExceeded {
            requested: max_order,
        });
    }
    let mut catalog: Vec<(IsoClassKey, PermGroup)> = Vec::new();
    for n in 1..=max_order {
        for table in cayley_tables(n) {
            let group = regular_group_from_table(&table, n);
            let key = group.iso_key()?;
            let mut duplicate = false;
            for (existing_key, existing) in catalog.iter().filter(|(k, _)| *k == key) {
                debug_assert_eq!(existing_key.order, n as u64);
                if are_isomorphic(existing, &group)? {
                    duplicate = true;
                    break;
                }
            }
            if !duplicate {
                catalog.push((key, group));
            }
        }
    }
    catalog.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(catalog.into_iter().map(|(_, g)| g).collect())
}

const CAYLEY_UNDEF: u8 = u8::MAX;

/// All group multiplication tables on `{0..n-1}` with identity 0, by
/// backtracking over Latin-square completions with associativity forcing.
fn cayley_tables(n: usize) -> Vec<Vec<u8>> {
    let mut search = CayleySearch {
        n,
        table: alloc::vec![CAYLEY_UNDEF; n * n],
        row_used: alloc::vec![0u64; n],
        col_used: alloc::vec![0u64; n],
        trail: Vec::new(),
        out: Vec::new(),
    };
    for k in 0..n {
        search.place(0, k, k as u8);
        if k > 0 {
            search.place(k, 0, k as u8);
        }
    }
    search.fill(n + 1);
    search.out
}

struct CayleySearch {
    n: usize,
    table: Vec<u8>,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    trail: Vec<usize>,
    out: Vec<Vec<u8>>,
}

impl CayleySearch {
    #[inline]
    fn get(&self, i: usize, j: usize) -> u8 {
        self.table[i * self.n + j]
    }

    fn place(&mut self, i: usize, j: usize, v: u8) {
        debug_assert_eq!(self.get(i, j), CAYLEY_UNDEF);
        self.table[i * self.n + j] = v;
        self.row_used[i] |= 1 << v;
        self.col_used[j] |= 1 << v;
        self.trail.push(i * self.n + j);
    }

    fn can_place(&self, i: usize, j: usize, v: u8) -> bool {
        self.row_used[i] & (1 << v) == 0 && self.col_used[j] & (1 << v) == 0
    }

    fn unwind(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let idx = self.trail.pop().expect("mark within trail");
            let v = self.table[idx];
            self.table[idx] = CAYLEY_UNDEF;
            self.row_used[idx / self.n] &= !(1 << v);
            self.col_used[idx % self.n] &= !(1 << v);
        }
    }

    fn fill(&mut self, from: usize) {
        let Some(idx) = (from..self.n * self.n).find(|&i| self.table[i] == CAYLEY_UNDEF) else {
            self.out.push(self.table.clone());
            return;
        };
        let (i, j) = (idx / self.n, idx % self.n);
        for v in 0..self.n as u8 {
            if !self.can_place(i, j, v) {
                continue;
            }
            let mark = self.trail.len();
            self.place(i, j, v);
            if self.force_associativity() {
                self.fill(idx);
            }
            self.unwind(mark);
        }
    }

    /// Propagates `(a*b)*c = a*(b*c)` over all triples to a fixpoint,
    /// forcing cells when one side is determined and the other has exactly
    /// one undefined link. Returns false on contradiction.
    fn force_associativity(&mut self) -> bool {
        loop {
            let mut forced = false;
            for a in 1..self.n {
                for b in 1..self.n {
                    let ab = self.get(a, b);
                    if ab == CAYLEY_UNDEF {
                        continue;
                    }
                    for c in 1..self.n {
                        let bc = self.get(b, c);
                        if bc == CAYLEY_UNDEF {
                            continue;
                        }
                        let lhs = self.get(ab as usize, c);
                        let rhs = self.get(a, bc as usize);
                        match (lhs, rhs) {
                            (CAYLEY_UNDEF, CAYLEY_UNDEF) => {}
                            (x, y) if x != CAYLEY_UNDEF && y != CAYLEY_UNDEF => {
                                if x != y {
                                    return false;
                                }
                            }
                            (x, CAYLEY_UNDEF) => {
                                if !self.can_place(a, bc as usize, x) {
                                    return false;
                                }
                                self.place(a, bc as usize, x);
                                forced = true;
                            }
                            (CAYLEY_UNDEF, y) => {
                                if !self.can_place(ab as usize, c, y) {
                                    return false;
                                }
                                self.place(ab as usize, c, y);
                                forced = true;
                            }
                            _ => unreachable!("match arms cover all cases"),
                        }
                    }
                }
            }
            if !forced {
                return true;
            }
        }
    }
}

/// Regular representation: element x acts by right multiplication. A greedy
/// pass picks generators so the group is not carried around as n generators.
fn regular_group_from_table(table: &[u8], n: usize) -> PermGroup {
    let perm_of = |x: usize| {
        Permutation::from_images((0..n).map(|y| table[y * n + x] as u32).collect())
            .expect("rows of a Latin square are bijections")
    };
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span = alloc::vec![perm_of(0)];
    for x in 1..n {
        let p = perm_of(x);
        if !span.contains(&p) {
            gens.push(p);
            let group = PermGroup::new(n, gens.clone()).expect("valid generators");
            span = group.elements().expect("order is at most the catalog cap");
        }
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(n));
    }
    PermGroup::new(n, gens).expect("valid generators")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::evaluate_word;
    use crate::presentation::BsParams;

    fn bs(m: i64, n: i64) -> GroupPresentation {
        GroupPresentation::baumslag_solitar(BsParams::new(m, n).unwrap())
    }

    #[test]
    fn quotients_of_the_infinite_cyclic_group() {
        let pres = GroupPresentation::parse("< a | >").unwrap();
        let fp = compute_fingerprint(&pres, 4).unwrap();
        // trivial, Z2, Z3, Z4: quotients of Z are cyclic.
        assert_eq!(fp.classes().len(), 4);
        let orders: Vec<u64> = fp.classes().iter().map(|c| c.key.order).collect();
        assert_eq!(orders, alloc::vec![1, 2, 3, 4]);
    }

    #[test]
    fn bs33_has_symmetric_three_as_quotient() {
        let fp = compute_fingerprint(&bs(3, 3), 6).unwrap();
        let s3 = fp
            .classes_of_order(6)
            .find(|c| c.key.derived_order == 3)
            .expect("a nonabelian order-6 quotient");
        // S_3: a -> 3-cycle, t -> transposition satisfies t a^3 t^-1 = a^3.
        assert_eq!(s3.key.element_order_histogram, alloc::vec![(1, 1), (2, 3), (3, 2)]);
    }

    #[test]
    fn dihedral_eight_separates_bs22_from_bs33() {
        let d4 = dihedral_8();
        let fp22 = compute_fingerprint(&bs(2, 2), 8).unwrap();
        let fp33 = compute_fingerprint(&bs(3, 3), 8).unwrap();
        let in22 = fp22
            .classes_of_order(8)
            .any(|c| are_isomorphic(c.quotient.group(), &d4).unwrap());
        let in33 = fp33
            .classes_of_order(8)
            .any(|c| are_isomorphic(c.quotient.group(), &d4).unwrap());
        assert!(in22);
        assert!(!in33);
    }

    fn dihedral_8() -> PermGroup {
        let r = Permutation::from_images(alloc::vec![1, 2, 3, 0]).unwrap();
        let s = Permutation::from_images(alloc::vec![2, 1, 0, 3]).unwrap();
        PermGroup::new(4, alloc::vec![r, s]).unwrap()
    }

    #[test]
    fn quotient_representatives_satisfy_relators_and_are_regular() {
        let pres = bs(2, -2);
        let fp = compute_fingerprint(&pres, 6).unwrap();
        for class in fp.classes() {
            let q = &class.quotient;
            assert_eq!(q.order(), q.group().order().unwrap() as usize);
            for r in pres.relators() {
                assert!(evaluate_word(r, q.gen_images(), q.order()).is_identity());
            }
        }
    }

    #[test]
    fn identical_presentations_have_empty_diff() {
        let fp1 = compute_fingerprint(&bs(2, 2), 6).unwrap();
        let fp2 = compute_fingerprint(&bs(2, 2), 6).unwrap();
        let diff = diff_fingerprints(&fp1, &fp2).unwrap();
        assert!(diff.is_empty());
        assert_eq!(diff.common_count, fp1.classes().len());
    }

    #[test]
    fn swapped_parameters_have_empty_diff_at_order_six() {
        let fp1 = compute_fingerprint(&bs(1, 2), 6).unwrap();
        let fp2 = compute_fingerprint(&bs(2, 1), 6).unwrap();
        assert!(diff_fingerprints(&fp1, &fp2).unwrap().is_empty());
    }

    #[test]
    fn negated_parameters_have_empty_diff_at_order_six() {
        let fp1 = compute_fingerprint(&bs(2, 2), 6).unwrap();
        let fp2 = compute_fingerprint(&bs(-2, -2), 6).unwrap();
        assert!(diff_fingerprints(&fp1, &fp2).unwrap().is_empty());
    }

    #[test]
    fn fingerprint_classes_grow_monotonically() {
        let small = compute_fingerprint(&bs(3, 3), 4).unwrap();
        let large = compute_fingerprint(&bs(3, 3), 8).unwrap();
        for c in small.classes() {
            let found = large
                .classes()
                .iter()
                .filter(|d| d.key == c.key)
                .any(|d| are_isomorphic(c.quotient.group(), d.quotient.group()).unwrap());
            assert!(found, "class of order {} lost at higher cap", c.key.order);
        }
    }

    #[test]
    fn mismatched_truncations_are_rejected() {
        let fp1 = compute_fingerprint(&bs(1, 2), 4).unwrap();
        let fp2 = compute_fingerprint(&bs(1, 2), 6).unwrap();
        assert_eq!(
            diff_fingerprints(&fp1, &fp2).unwrap_err(),
            FingerprintError::MaxOrderMismatch { left: 4, right: 6 }
        );
    }

    #[test]
    fn catalog_counts_match_the_classification() {
        let catalog = small_group_catalog(8).unwrap();
        let mut counts = [0usize; 9];
        for g in &catalog {
            counts[g.order().unwrap() as usize] += 1;
        }
        assert_eq!(counts[1..], [1, 1, 1, 2, 1, 2, 1, 5]);
        assert_eq!(catalog.len(), 14);
    }

    #[test]
    fn catalog_of_order_four() {
        let catalog = small_group_catalog(4).unwrap();
        assert_eq!(catalog.len(), 5);
        let of_order_4: Vec<_> = catalog
            .iter()
            .filter(|g| g.order().unwrap() == 4)
            .collect();
        assert_eq!(of_order_4.len(), 2);
        assert!(!are_isomorphic(of_order_4[0], of_order_4[1]).unwrap());
    }

    #[test]
    fn catalog_of_order_one() {
        let catalog = small_group_catalog(1).unwrap();
        assert_eq!(catalog.len(), 1);
        assert_eq!(catalog[0].order().unwrap(), 1);
    }

    #[test]
    fn catalog_groups_are_regular() {
        for g in small_group_catalog(6).unwrap() {
            assert_eq!(g.order().unwrap() as usize, g.degree());
        }
    }

    #[test]
    fn fingerprint_caps_are_enforced() {
        let p = bs(1, 2);
        assert_eq!(
            compute_fingerprint(&p, 0).unwrap_err(),
            FingerprintError::ZeroOrder
        );
        assert_eq!(
            compute_fingerprint(&p, 65).unwrap_err(),
            FingerprintError::OrderCapExceeded { requested: 65 }
        );
        assert_eq!(
            small_group_catalog(9).unwrap_err(),
            FingerprintError::CatalogCapExceeded { requested: 9 }
        );
    }
}
