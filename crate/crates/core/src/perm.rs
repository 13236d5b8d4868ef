//! Finite permutation groups: element enumeration, isomorphism invariants,
//! and certified isomorphism testing.
//!
//! Groups are given by generating permutations; everything else is computed
//! by closure. There is deliberately no stabilizer-chain machinery: at the
//! orders this crate handles (fingerprint quotients are capped at 64, the
//! isomorphism search at 4096) brute-force closure is simpler and fast
//! enough.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::presentation::Word;
use crate::snf::AbelianInvariants;

/// Cap on explicit element enumeration.
pub const ELEMENT_CLOSURE_CAP: usize = 100_000;

/// Cap on the order of groups fed to the isomorphism search.
pub const ISO_ORDER_CAP: usize = 1 << 12;

/// A permutation of `{0, ..., degree-1}` in one-line image form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &img in &images {
            if (img as usize) >= n || seen[img as usize] {
                return Err(PermError::NotABijection);
            }
            seen[img as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Composition in application order: `(p.compose(q))(x) = q(p(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&v| other.images[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = alloc::vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `g^-1 * self * g`.
    pub fn conjugated_by(&self, g: &Permutation) -> Permutation {
        g.inverse().compose(self).compose(g)
    }

    /// Multiplicative order: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = alloc::vec![false; self.images.len()];
        let mut order: u128 = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len: u128 = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            order = order / gcd_u128(order, len) * len;
        }
        u64::try_from(order).expect("element order exceeds u64")
    }

    /// Nontrivial cycles as 0-based point lists, each starting at its
    /// smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = alloc::vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation on 1-based points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A permutation group given by generators of a common degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch);
        }
        Ok(PermGroup { degree, gens })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// Every element, obtained by closure from the generators, in one-line
    /// lexicographic order.
    pub fn elements(&self) -> Result<Vec<Permutation>, CapExceeded> {
        let set = self.element_set(ELEMENT_CLOSURE_CAP)?;
        Ok(set.into_iter().collect())
    }

    pub fn order(&self) -> Result<u64, CapExceeded> {
        Ok(self.element_set(ELEMENT_CLOSURE_CAP)?.len() as u64)
    }

    fn element_set(&self, cap: usize) -> Result<BTreeSet<Permutation>, CapExceeded> {
        close_under_products(
            core::iter::once(Permutation::identity(self.degree)).chain(self.gens.iter().cloned()),
            &self.gens,
            cap,
        )
    }

    /// All isomorphism invariants bundled into a screening key.
    pub fn iso_key(&self) -> Result<IsoClassKey, CapExceeded> {
        let elements = self.element_set(ELEMENT_CLOSURE_CAP)?;
        Ok(iso_key_of(&elements, &self.gens))
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, CapExceeded> {
        Ok(self.element_set(ELEMENT_CLOSURE_CAP)?.contains(p))
    }
}

/// Closure of a seed set under right multiplication by `gens`.
fn close_under_products<I>(
    seed: I,
    gens: &[Permutation],
    cap: usize,
) -> Result<BTreeSet<Permutation>, CapExceeded>
where
    I: IntoIterator<Item = Permutation>,
{
    let mut set: BTreeSet<Permutation> = BTreeSet::new();
    let mut frontier: Vec<Permutation> = Vec::new();
    for p in seed {
        if set.insert(p.clone()) {
            frontier.push(p);
        }
    }
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = p.compose(g);
            if !set.contains(&q) {
                if set.len() >= cap {
                    return Err(CapExceeded { cap });
                }
                set.insert(q.clone());
                frontier.push(q);
            }
        }
    }
    Ok(set)
}

/// Subgroup generated by `gens` inside a group with the given degree.
fn subgroup_closure(degree: usize, gens: &[Permutation]) -> BTreeSet<Permutation> {
    close_under_products(
        core::iter::once(Permutation::identity(degree)).chain(gens.iter().cloned()),
        gens,
        ELEMENT_CLOSURE_CAP,
    )
    .expect("subgroup closure within an already-enumerated group")
}

/// Isomorphism invariants used to screen and sort quotient classes.
///
/// Equal keys do not certify isomorphism; unequal keys refute it. The
/// ordering compares the element-order statistics as expanded multisets, so
/// groups with more low-order elements sort first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClassKey {
    pub order: u64,
    /// `(element order, count)` pairs, sorted by element order.
    pub element_order_histogram: Vec<(u64, u64)>,
    pub abelian_invariants: AbelianInvariants,
    pub center_order: u64,
    pub derived_order: u64,
    /// Conjugacy class sizes as a sorted multiset.
    pub conj_class_sizes: Vec<u64>,
}

impl Ord for IsoClassKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| {
                cmp_order_multisets(&self.element_order_histogram, &other.element_order_histogram)
            })
            .then_with(|| self.abelian_invariants.cmp(&other.abelian_invariants))
            .then_with(|| self.center_order.cmp(&other.center_order))
            .then_with(|| self.derived_order.cmp(&other.derived_order))
            .then_with(|| self.conj_class_sizes.cmp(&other.conj_class_sizes))
    }
}

impl PartialOrd for IsoClassKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic comparison of histograms expanded into sorted multisets:
/// `{1,2,2}` precedes `{1,2,4}` even though `(2,2)` exceeds `(2,1)` pairwise.
fn cmp_order_multisets(a: &[(u64, u64)], b: &[(u64, u64)]) -> Ordering {
    let (mut ai, mut bi) = (0usize, 0usize);
    let mut a_left = a.first().map_or(0, |p| p.1);
    let mut b_left = b.first().map_or(0, |p| p.1);
    while ai < a.len() && bi < b.len() {
        match a[ai].0.cmp(&b[bi].0) {
            Ordering::Equal => {
                let take = a_left.min(b_left);
                a_left -= take;
                b_left -= take;
                if a_left == 0 {
                    ai += 1;
                    a_left = a.get(ai).map_or(0, |p| p.1);
                }
                if b_left == 0 {
                    bi += 1;
                    b_left = b.get(bi).map_or(0, |p| p.1);
                }
            }
            unequal => return unequal,
        }
    }
    match (ai < a.len(), bi < b.len()) {
        (false, false) => Ordering::Equal,
        (false, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
        (true, true) => unreachable!("loop exits only on exhaustion"),
    }
}

fn iso_key_of(elements: &BTreeSet<Permutation>, gens: &[Permutation]) -> IsoClassKey {
    let order = elements.len() as u64;
    let degree = elements
        .first()
        .map(Permutation::degree)
        .expect("group is nonempty");

    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    for x in elements {
        *histogram.entry(x.order()).or_insert(0) += 1;
    }

    let center_order = elements
        .iter()
        .filter(|x| gens.iter().all(|g| x.compose(g) == g.compose(x)))
        .count() as u64;

    let derived = derived_subgroup(degree, gens);
    let abelian_invariants = abelian_invariants_of_quotient(elements, &derived);

    IsoClassKey {
        order,
        element_order_histogram: histogram.into_iter().collect(),
        abelian_invariants,
        center_order,
        derived_order: derived.len() as u64,
        conj_class_sizes: conj_class_sizes(elements, gens),
    }
}

/// Normal closure of the generator commutators: conjugating the generating
/// list by group generators until stable is enough, since conjugation of a
/// generating set controls conjugation of the whole subgroup.
fn derived_subgroup(degree: usize, gens: &[Permutation]) -> BTreeSet<Permutation> {
    let mut seed: Vec<Permutation> = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in gens.iter().skip(i + 1) {
            let comm = a.inverse().compose(&b.inverse()).compose(a).compose(b);
            if !comm.is_identity() && !seed.contains(&comm) {
                seed.push(comm);
            }
        }
    }
    let mut sub = subgroup_closure(degree, &seed);
    let mut i = 0;
    while i < seed.len() {
        for g in gens {
            let c = seed[i].conjugated_by(g);
            if !sub.contains(&c) {
                seed.push(c);
                sub = subgroup_closure(degree, &seed);
            }
        }
        i += 1;
    }
    sub
}

/// Invariant factors of the (abelian) quotient by a normal subgroup, read off
/// coset orders one prime at a time.
fn abelian_invariants_of_quotient(
    elements: &BTreeSet<Permutation>,
    normal: &BTreeSet<Permutation>,
) -> AbelianInvariants {
    // Coset representatives: the minimal element of each right coset x*N.
    let mut reps: BTreeSet<Permutation> = BTreeSet::new();
    for x in elements {
        let rep = normal
            .iter()
            .map(|d| x.compose(d))
            .min()
            .expect("normal subgroup contains the identity");
        reps.insert(rep);
    }
    // Order of xN in the quotient: least k with x^k in N.
    let mut coset_orders: Vec<u64> = Vec::new();
    for x in &reps {
        let mut power = x.clone();
        let mut k: u64 = 1;
        while !normal.contains(&power) {
            power = power.compose(x);
            k += 1;
        }
        coset_orders.push(k);
    }

    let q_order = reps.len() as u64;
    let mut torsion_desc: Vec<u64> = Vec::new();
    for p in prime_divisors(q_order) {
        // s_k = log_p #{cosets whose order divides p^k}; the successive
        // differences give the conjugate of the partition of p-exponents.
        let mut s: Vec<u32> = alloc::vec![0];
        let mut k = 0u32;
        loop {
            k += 1;
            let pk = p.pow(k);
            let count = coset_orders
                .iter()
                .filter(|&&o| is_p_power_dividing(o, p, pk))
                .count() as u64;
            s.push(log_exact(count, p));
            if count == coset_orders.iter().filter(|&&o| is_p_power(o, p)).count() as u64 {
                break;
            }
        }
        let mut conjugate: Vec<u32> = Vec::new();
        for k in 1..s.len() {
            conjugate.push(s[k] - s[k - 1]);
        }
        // conjugate[k-1] = number of cyclic factors with exponent >= k
        let max_parts = conjugate.first().copied().unwrap_or(0) as usize;
        for part in 0..max_parts {
            let exponent = conjugate.iter().filter(|&&m| m as usize > part).count() as u32;
            let value = p.pow(exponent);
            if torsion_desc.len() <= part {
                torsion_desc.resize(part + 1, 1);
            }
            torsion_desc[part] *= value;
        }
    }
    let mut torsion: Vec<u64> = torsion_desc.into_iter().filter(|&d| d > 1).collect();
    torsion.reverse();
    AbelianInvariants::new(0, torsion)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// True when `o` is a power of `p` and `o <= pk`.
fn is_p_power_dividing(o: u64, p: u64, pk: u64) -> bool {
    is_p_power(o, p) && pk % o == 0
}

fn is_p_power(mut o: u64, p: u64) -> bool {
    while o % p == 0 {
        o /= p;
    }
    o == 1
}

/// log base `p` of an exact power.
fn log_exact(mut n: u64, p: u64) -> u32 {
    let mut log = 0;
    while n % p == 0 {
        n /= p;
        log += 1;
    }
    debug_assert_eq!(n, 1, "count of p-power-order elements must be a p-power");
    log
}

fn conj_class_sizes(elements: &BTreeSet<Permutation>, gens: &[Permutation]) -> Vec<u64> {
    let mut assigned: BTreeSet<&Permutation> = BTreeSet::new();
    let mut sizes = Vec::new();
    for x in elements {
        if assigned.contains(x) {
            continue;
        }
        let mut orbit: BTreeSet<Permutation> = BTreeSet::new();
        let mut frontier = alloc::vec![x.clone()];
        orbit.insert(x.clone());
        while let Some(y) = frontier.pop() {
            for g in gens {
                let z = y.conjugated_by(g);
                if orbit.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
        sizes.push(orbit.len() as u64);
        for y in &orbit {
            if let Some(stored) = elements.get(y) {
                assigned.insert(stored);
            }
        }
    }
    sizes.sort_unstable();
    sizes
}

/// Certified isomorphism test: a key screen followed by a backtracking search
/// for an explicit generator mapping. `true` always comes with a found map,
/// never from key equality alone.
pub fn are_isomorphic(g: &PermGroup, h: &PermGroup) -> Result<bool, CapExceeded> {
    let g_elements = g.element_set(ISO_ORDER_CAP)?;
    let h_elements = h.element_set(ISO_ORDER_CAP)?;
    if g_elements.len() != h_elements.len() {
        return Ok(false);
    }
    if iso_key_of(&g_elements, g.generators()) != iso_key_of(&h_elements, h.generators()) {
        return Ok(false);
    }

    // Greedy generating sequence of g, highest element order first to keep
    // the branching factor down.
    let mut by_order: Vec<&Permutation> = g_elements.iter().collect();
    by_order.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.cmp(b)));
    let mut seq: Vec<Permutation> = Vec::new();
    let mut span: BTreeSet<Permutation> = subgroup_closure(g.degree(), &[]);
    for x in by_order {
        if span.len() == g_elements.len() {
            break;
        }
        if !span.contains(x) {
            seq.push(x.clone());
            span = subgroup_closure(g.degree(), &seq);
        }
    }

    let h_all: Vec<Permutation> = h_elements.iter().cloned().collect();
    let mut images: Vec<Permutation> = Vec::new();
    Ok(map_search(&seq, &mut images, &h_all, &g_elements, &h_elements))
}

fn map_search(
    seq: &[Permutation],
    images: &mut Vec<Permutation>,
    h_all: &[Permutation],
    g_elements: &BTreeSet<Permutation>,
    h_elements: &BTreeSet<Permutation>,
) -> bool {
    if images.len() == seq.len() {
        return extends_to_isomorphism(seq, images, g_elements, h_elements, true);
    }
    let want_order = seq[images.len()].order();
    for candidate in h_all {
        if candidate.order() != want_order {
            continue;
        }
        images.push(candidate.clone());
        let consistent = extends_to_isomorphism(seq, images, g_elements, h_elements, false)
            && map_search(seq, images, h_all, g_elements, h_elements);
        images.pop();
        if consistent {
            return true;
        }
    }
    false
}

/// Checks that `seq[i] -> images[i]` extends to an injective homomorphism on
/// the subgroup generated so far, by walking the Cayley graph and verifying
/// every edge. With `require_full`, additionally demands that the subgroup is
/// all of `g` (and hence, by injectivity and equal orders, maps onto `h`).
fn extends_to_isomorphism(
    seq: &[Permutation],
    images: &[Permutation],
    g_elements: &BTreeSet<Permutation>,
    h_elements: &BTreeSet<Permutation>,
    require_full: bool,
) -> bool {
    let gens = &seq[..images.len()];
    let g_id = Permutation::identity(
        g_elements
            .first()
            .expect("group is nonempty")
            .degree(),
    );
    let h_id = Permutation::identity(
        h_elements
            .first()
            .expect("group is nonempty")
            .degree(),
    );
    let mut map: BTreeMap<Permutation, Permutation> = BTreeMap::new();
    let mut inverse_seen: BTreeSet<Permutation> = BTreeSet::new();
    map.insert(g_id.clone(), h_id.clone());
    inverse_seen.insert(h_id);
    let mut frontier = alloc::vec![g_id];
    while let Some(x) = frontier.pop() {
        let fx = map.get(&x).expect("frontier elements are mapped").clone();
        for (a, b) in gens.iter().zip(images) {
            let y = x.compose(a);
            let fy = fx.compose(b);
            match map.get(&y) {
                Some(existing) => {
                    if *existing != fy {
                        return false;
                    }
                }
                None => {
                    if !inverse_seen.insert(fy.clone()) {
                        // Two distinct elements would share an image.
                        return false;
                    }
                    map.insert(y.clone(), fy);
                    frontier.push(y);
                }
            }
        }
    }
    !require_full || map.len() == g_elements.len()
}

/// Applies a word to generator images, multiplying left to right.
pub fn evaluate_word(word: &Word, images: &[Permutation], degree: usize) -> Permutation {
    let mut acc = Permutation::identity(degree);
    for s in word.syllables() {
        let base = if s.exp > 0 {
            images[s.gen].clone()
        } else {
            images[s.gen].inverse()
        };
        for _ in 0..s.exp.unsigned_abs() {
            acc = acc.compose(&base);
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermError {
    NotABijection,
    DegreeMismatch,
    ZeroDegree,
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotABijection => write!(f, "images do not form a bijection"),
            PermError::DegreeMismatch => write!(f, "generator degrees differ"),
            PermError::ZeroDegree => write!(f, "permutation group needs degree at least 1"),
        }
    }
}

impl core::error::Error for PermError {}

/// A closure or search outgrew its configured cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapExceeded {
    pub cap: usize,
}

impl fmt::Display for CapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group order cap of {} exceeded", self.cap)
    }
}

impl core::error::Error for CapExceeded {}
