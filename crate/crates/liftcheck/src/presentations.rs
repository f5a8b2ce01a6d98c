//! Finitely presented groups: relator checking, presentations of central
//! extensions built from a presentation of the quotient and a basis of the
//! kernel, presentations of p-groups in which every relator has all
//! generator exponent sums divisible by p, and Todd–Coxeter coset
//! enumeration used to certify presented orders.

use std::collections::HashMap;
use std::sync::Arc;

use crate::groups::{FiniteGroup, GroupHom, SubgroupHandle};
use crate::linalg::{complete_to_basis, max_independent_subset, FpVector};
use crate::words::Word;
use crate::{Error, Result};

/// Default row cap for coset enumeration.
pub const DEFAULT_TABLE_LIMIT: usize = 200_000;

/// `⟨ x_0, …, x_{k−1} | relators ⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generator_count: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if r.alphabet_span() > generator_count {
                return Err(Error::GeneratorOutOfBounds {
                    index: r.alphabet_span() - 1,
                    alphabet: generator_count,
                });
            }
        }
        Ok(Presentation { generator_count, relators })
    }

    pub fn trivial() -> Self {
        Presentation { generator_count: 0, relators: Vec::new() }
    }

    /// True when every relator has exponent sum ≡ 0 mod p in every
    /// generator.
    pub fn exponent_sums_divisible_by(&self, p: u64) -> bool {
        self.relators.iter().all(|r| {
            (0..self.generator_count).all(|x| r.exponent_sum(x).rem_euclid(p as i64) == 0)
        })
    }
}

/// A presentation together with generator images in a concrete group.
#[derive(Debug, Clone)]
pub struct PresentedGroupMap {
    pub presentation: Presentation,
    pub target: Arc<FiniteGroup>,
    pub images: Vec<usize>,
}

/// True iff every relator evaluates to the identity in the target.
pub fn check_relators(map: &PresentedGroupMap) -> bool {
    map.presentation.relators.iter().all(|r| {
        r.evaluate(&map.target, &map.images)
            .map(|e| e == FiniteGroup::IDENTITY)
            .unwrap_or(false)
    })
}

/// The pieces of an extension presentation `⟨ X ∪ Y | R ∪ S ∪ T ⟩`:
/// lifts `X` of the quotient generators, a basis `Y` of the central kernel,
/// rewritten quotient relators `R = { r·w_r⁻¹ }`, kernel relators `S`,
/// conjugation relators `T`, and the list `W = { w_r }`.
#[derive(Debug, Clone)]
pub struct ExtensionPresentationParts {
    /// Lifts of the quotient generators, as elements of the extension group.
    pub x_lifts: Vec<usize>,
    /// The kernel basis, as elements of the extension group.
    pub y_elements: Vec<usize>,
    pub r_relators: Vec<Word>,
    pub s_relators: Vec<Word>,
    pub t_relators: Vec<Word>,
    /// `w_r` for each quotient relator, as a word in the `Y` letters.
    pub w_words: Vec<Word>,
    /// Coordinates of each `r(X)` in the kernel basis.
    pub w_coords: Vec<FpVector>,
}

/// Coordinate bookkeeping for an elementary abelian subgroup: every member
/// expressed in a fixed ordered basis.
struct ElementaryCoords {
    dim: usize,
    basis: Vec<usize>,
    coords_of: HashMap<usize, FpVector>,
}

impl ElementaryCoords {
    /// Builds coordinates for `n` relative to `basis`, which must be an
    /// independent generating family.
    fn new(group: &FiniteGroup, n: &SubgroupHandle, p: u64, basis: Vec<usize>) -> Result<Self> {
        let dim = basis.len();
        let mut expected = 1usize;
        for _ in 0..dim {
            expected *= p as usize;
        }
        if expected != n.order() {
            return Err(Error::DependentInput);
        }
        let mut coords_of = HashMap::with_capacity(n.order());
        let mut elements = vec![FiniteGroup::IDENTITY];
        let mut coords = vec![FpVector::zero(p, dim)];
        coords_of.insert(FiniteGroup::IDENTITY, FpVector::zero(p, dim));
        for (i, &b) in basis.iter().enumerate() {
            let snapshot: Vec<(usize, FpVector)> =
                elements.iter().cloned().zip(coords.iter().cloned()).collect();
            let mut power = b;
            for e in 1..p {
                for (elt, c) in &snapshot {
                    let combined = group.mul(*elt, power);
                    let mut cc = c.clone();
                    cc.entries[i] = e;
                    if coords_of.insert(combined, cc.clone()).is_some() {
                        return Err(Error::DependentInput);
                    }
                    elements.push(combined);
                    coords.push(cc);
                }
                power = group.mul(power, b);
            }
        }
        if coords_of.len() != n.order() || !n.members().iter().all(|m| coords_of.contains_key(m)) {
            return Err(Error::DependentInput);
        }
        Ok(ElementaryCoords { dim, basis, coords_of })
    }

    /// A deterministic basis: greedy scan of the members in canonical order.
    fn greedy_basis(group: &FiniteGroup, n: &SubgroupHandle) -> Vec<usize> {
        let mut basis: Vec<usize> = Vec::new();
        let mut span = group.subgroup_closure(&[]);
        for &m in n.members() {
            if span.contains(m) {
                continue;
            }
            basis.push(m);
            span = group.subgroup_closure(&basis);
            if span.order() == n.order() {
                break;
            }
        }
        basis
    }

    fn coords(&self, element: usize) -> Option<&FpVector> {
        self.coords_of.get(&element)
    }

    /// The element with the given coordinates.
    fn element(&self, group: &FiniteGroup, coords: &FpVector) -> usize {
        let mut out = FiniteGroup::IDENTITY;
        for (i, &b) in self.basis.iter().enumerate() {
            for _ in 0..coords.entries[i] {
                out = group.mul(out, b);
            }
        }
        out
    }
}

fn check_central_elementary(
    group: &FiniteGroup,
    n: &SubgroupHandle,
    p: u64,
) -> Result<()> {
    for &m in n.members() {
        if (0..group.order()).any(|g| group.mul(m, g) != group.mul(g, m)) {
            return Err(Error::NotCentral);
        }
        let o = group.element_order(m);
        if o != 1 && o as u64 != p {
            return Err(Error::NotElementaryAbelian);
        }
    }
    Ok(())
}

/// Builds the presentation `⟨ X ∪ Y | R ∪ S ∪ T ⟩` of `G` from a central
/// elementary abelian subgroup `N`, a presentation of `Q = G/N` with its
/// generator images, the projection `G → Q`, and a basis of `N`.
///
/// The combined alphabet puts the `X` letters first (indices `0..|X|`) and
/// the `Y` letters after them. Lifts are minimal-index coset
/// representatives. In the central case the conjugation relators `T` are
/// plain commutators `[x, y]`.
pub fn extension_presentation(
    group: &Arc<FiniteGroup>,
    n: &SubgroupHandle,
    p: u64,
    q_pres: &Presentation,
    q_map: &PresentedGroupMap,
    proj: &GroupHom,
    n_basis: &[usize],
) -> Result<(Presentation, ExtensionPresentationParts, PresentedGroupMap)> {
    check_central_elementary(group, n, p)?;
    if proj.kernel() != *n {
        return Err(Error::BadPresentation("projection kernel is not N".into()));
    }
    if !Arc::ptr_eq(&q_map.target, &proj.target)
        || q_map.presentation.generator_count != q_pres.generator_count
        || !check_relators(q_map)
        || !q_map.is_surjective_onto_target()
    {
        return Err(Error::BadPresentation("Q map does not present G/N".into()));
    }
    let coords = ElementaryCoords::new(group, n, p, n_basis.to_vec())?;
    let nx = q_pres.generator_count;
    let ny = coords.dim;

    // X: minimal-index lifts of the quotient generator images.
    let x_lifts: Vec<usize> = q_map
        .images
        .iter()
        .map(|&qbar| proj.min_preimage(qbar).expect("projection is surjective"))
        .collect();
    let y_elements = coords.basis.clone();

    // S = { y^p, [y_i, y_j] }.
    let mut s_relators = Vec::new();
    for i in 0..ny {
        s_relators.push(Word::power(nx + i, p as i64));
    }
    for i in 0..ny {
        for j in (i + 1)..ny {
            s_relators.push(Word::generator(nx + i).commutator(&Word::generator(nx + j)));
        }
    }

    // T: commutators [x, y] since N is central, written x⁻¹ y x y⁻¹.
    let mut t_relators = Vec::new();
    for xi in 0..nx {
        for yi in 0..ny {
            let x = Word::generator(xi);
            let y = Word::generator(nx + yi);
            t_relators.push(x.inverse().concat(&y).concat(&x).concat(&y.inverse()));
        }
    }

    // R = { r·w_r⁻¹ } with w_r read off from the coordinates of r(X) in N.
    let mut r_relators = Vec::new();
    let mut w_words = Vec::new();
    let mut w_coords = Vec::new();
    for r in &q_pres.relators {
        let value = r.evaluate(group, &x_lifts)?;
        let c = coords
            .coords(value)
            .ok_or_else(|| Error::BadPresentation("quotient relator does not land in N".into()))?
            .clone();
        let mut w_r = Word::identity();
        for (i, &e) in c.entries.iter().enumerate() {
            w_r = w_r.concat(&Word::power(nx + i, e as i64));
        }
        r_relators.push(r.concat(&w_r.inverse()));
        w_words.push(w_r);
        w_coords.push(c);
    }

    let mut relators = r_relators.clone();
    relators.extend(s_relators.iter().cloned());
    relators.extend(t_relators.iter().cloned());
    let presentation = Presentation::new(nx + ny, relators)?;

    let mut images = x_lifts.clone();
    images.extend_from_slice(&y_elements);
    let map = PresentedGroupMap {
        presentation: presentation.clone(),
        target: Arc::clone(group),
        images,
    };
    if !check_relators(&map) {
        return Err(Error::BadPresentation("extension presentation relators do not hold".into()));
    }

    let parts = ExtensionPresentationParts {
        x_lifts,
        y_elements,
        r_relators,
        s_relators,
        t_relators,
        w_words,
        w_coords,
    };
    Ok((presentation, parts, map))
}

impl PresentedGroupMap {
    fn is_surjective_onto_target(&self) -> bool {
        self.target
            .subgroup_closure(&self.images)
            .order()
            == self.target.order()
    }
}

/// A presentation of the p-group `P` in which every relator has all
/// generator exponent sums divisible by p, built by recursion on
/// `Ω₁(Z(P))` with the kernel basis adapted to the relator values `W`, so
/// that the generators in `W ∩ Y` can be eliminated.
pub fn pgroup_presentation(
    group: &Arc<FiniteGroup>,
    p: u64,
) -> Result<(Presentation, PresentedGroupMap)> {
    pgroup_presentation_with_limit(group, p, DEFAULT_TABLE_LIMIT)
}

pub fn pgroup_presentation_with_limit(
    group: &Arc<FiniteGroup>,
    p: u64,
    table_limit: usize,
) -> Result<(Presentation, PresentedGroupMap)> {
    if !group.is_p_group(p) {
        return Err(Error::NotPGroup { p, order: group.order() });
    }
    if group.order() == 1 {
        let presentation = Presentation::trivial();
        let map = PresentedGroupMap {
            presentation: presentation.clone(),
            target: Arc::clone(group),
            images: Vec::new(),
        };
        return Ok((presentation, map));
    }

    let n = group.omega1(&group.center(), p)?;
    let (quotient, proj) = group.quotient(&n)?;
    let (q_pres, q_map) = pgroup_presentation_with_limit(&quotient, p, table_limit)?;

    // Compute the relator values r(X) in N against a reference basis, then
    // re-choose the basis of N so that a maximal independent subset of W
    // forms its prefix.
    let reference = ElementaryCoords::new(
        group,
        &n,
        p,
        ElementaryCoords::greedy_basis(group, &n),
    )?;
    let x_lifts: Vec<usize> = q_map
        .images
        .iter()
        .map(|&qbar| proj.min_preimage(qbar).expect("projection is surjective"))
        .collect();
    let w_values: Vec<FpVector> = q_pres
        .relators
        .iter()
        .map(|r| {
            let value = r.evaluate(group, &x_lifts)?;
            Ok(reference
                .coords(value)
                .ok_or_else(|| {
                    Error::BadPresentation("quotient relator does not land in N".into())
                })?
                .clone())
        })
        .collect::<Result<_>>()?;
    let chosen = max_independent_subset(&w_values);
    let independent: Vec<FpVector> = chosen.iter().map(|&i| w_values[i].clone()).collect();
    let adapted_coords = complete_to_basis(&independent, p, reference.dim)?;
    let adapted_basis: Vec<usize> =
        adapted_coords.iter().map(|c| reference.element(group, c)).collect();

    let (_, parts, _) =
        extension_presentation(group, &n, p, &q_pres, &q_map, &proj, &adapted_basis)?;

    // Elimination step: the relator r_k for k ∈ chosen reads y_t = r_k with
    // r_k a word in X only; substitute it everywhere and drop both the
    // relator and the generator.
    let nx = q_pres.generator_count;
    let ny = parts.y_elements.len();
    let eliminated = chosen.len();
    let mut replacement_of: HashMap<usize, Word> = HashMap::new();
    for (t, &k) in chosen.iter().enumerate() {
        debug_assert_eq!(parts.w_coords[k], FpVector::unit(p, ny, t));
        replacement_of.insert(nx + t, q_pres.relators[k].clone());
    }
    // Remaining generators keep their relative order; X first, then the
    // surviving Y letters.
    let reindex = |g: usize| -> Word {
        if let Some(w) = replacement_of.get(&g) {
            w.clone()
        } else if g < nx {
            Word::generator(g)
        } else {
            Word::generator(g - eliminated)
        }
    };
    let mut relators: Vec<Word> = Vec::new();
    for (k, r) in parts.r_relators.iter().enumerate() {
        if chosen.contains(&k) {
            continue;
        }
        relators.push(r.substitute(&reindex));
    }
    for r in parts.s_relators.iter().chain(&parts.t_relators) {
        relators.push(r.substitute(&reindex));
    }
    relators.retain(|r| !r.is_identity());

    let generator_count = nx + ny - eliminated;
    let presentation = Presentation::new(generator_count, relators)?;
    let mut images = parts.x_lifts.clone();
    images.extend_from_slice(&parts.y_elements[eliminated..]);
    let map = PresentedGroupMap {
        presentation: presentation.clone(),
        target: Arc::clone(group),
        images,
    };

    // Certified postconditions.
    if !presentation.exponent_sums_divisible_by(p) {
        return Err(Error::BadPresentation(
            "relator exponent sums are not all divisible by p".into(),
        ));
    }
    if !check_relators(&map) {
        return Err(Error::BadPresentation("p-group presentation relators do not hold".into()));
    }
    let enumerated = coset_enumeration(&presentation, &[], table_limit)?;
    if enumerated != group.order() {
        return Err(Error::BadPresentation(format!(
            "presented order {enumerated} != group order {}",
            group.order()
        )));
    }
    Ok((presentation, map))
}

// ----------------------------------------------------------------------
// Todd–Coxeter coset enumeration (HLT with immediate coincidences)
// ----------------------------------------------------------------------

struct CosetTable {
    ncols: usize,
    rows: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    live: usize,
    limit: usize,
}

impl CosetTable {
    fn new(ncols: usize, limit: usize) -> Self {
        CosetTable { ncols, rows: vec![vec![None; ncols]], parent: vec![0], live: 1, limit }
    }

    fn find(&mut self, mut c: usize) -> usize {
        while self.parent[c] != c {
            self.parent[c] = self.parent[self.parent[c]];
            c = self.parent[c];
        }
        c
    }

    fn entry(&mut self, coset: usize, col: usize) -> Option<usize> {
        self.rows[coset][col].map(|d| self.find(d))
    }

    fn define(&mut self, coset: usize, col: usize) -> Result<usize> {
        if self.rows.len() >= self.limit {
            return Err(Error::CosetTableOverflow { limit: self.limit });
        }
        let fresh = self.rows.len();
        self.rows.push(vec![None; self.ncols]);
        self.parent.push(fresh);
        self.live += 1;
        self.rows[coset][col] = Some(fresh);
        self.rows[fresh][col ^ 1] = Some(coset);
        Ok(fresh)
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return;
        }
        let (keep, dead) = if a < b { (a, b) } else { (b, a) };
        self.parent[dead] = keep;
        self.live -= 1;
        queue.push(dead);
    }

    fn coincide(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        while let Some(dead) = queue.pop() {
            for col in 0..self.ncols {
                let Some(delta) = self.rows[dead][col].take() else { continue };
                // The reverse edge of (dead, col) pointed back at dead.
                self.rows[delta][col ^ 1] = None;
                let mu = self.find(dead);
                let nu = self.find(delta);
                if let Some(existing) = self.entry(mu, col) {
                    self.merge(nu, existing, &mut queue);
                } else if let Some(existing) = self.entry(nu, col ^ 1) {
                    self.merge(mu, existing, &mut queue);
                } else {
                    self.rows[mu][col] = Some(nu);
                    self.rows[nu][col ^ 1] = Some(mu);
                }
            }
        }
    }

    fn is_dead(&mut self, coset: usize) -> bool {
        self.find(coset) != coset
    }

    /// Traces the cyclic word at `coset`, filling gaps: defines a new coset
    /// on gaps longer than one, records a deduction on gaps of length one,
    /// and processes the coincidence when the scan closes inconsistently.
    fn scan_and_fill(&mut self, coset: usize, cols: &[usize]) -> Result<()> {
        if cols.is_empty() {
            return Ok(());
        }
        let mut forward = coset;
        let mut backward = coset;
        let mut i: isize = 0;
        let mut j: isize = cols.len() as isize - 1;
        loop {
            while i <= j {
                match self.entry(forward, cols[i as usize]) {
                    Some(next) => {
                        forward = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if forward != backward {
                    self.coincide(forward, backward);
                }
                return Ok(());
            }
            while j >= i {
                match self.entry(backward, cols[j as usize] ^ 1) {
                    Some(prev) => {
                        backward = prev;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincide(forward, backward);
                return Ok(());
            }
            if j == i {
                // Deduction closing a gap of length one.
                self.rows[forward][cols[i as usize]] = Some(backward);
                self.rows[backward][cols[i as usize] ^ 1] = Some(forward);
                return Ok(());
            }
            forward = self.define(forward, cols[i as usize])?;
            i += 1;
        }
    }
}

fn word_cols(word: &Word, generator_count: usize) -> Result<Vec<usize>> {
    word.letters()
        .iter()
        .map(|l| {
            if l.generator >= generator_count {
                return Err(Error::GeneratorOutOfBounds {
                    index: l.generator,
                    alphabet: generator_count,
                });
            }
            Ok(2 * l.generator + if l.sign == 1 { 0 } else { 1 })
        })
        .collect()
}

/// Todd–Coxeter coset enumeration (relator-table HLT strategy with
/// immediate coincidence processing). Returns the index of the subgroup
/// generated by `subgroup_words` — the group order when the list is empty —
/// provided the table closes within `table_limit` rows.
pub fn coset_enumeration(
    presentation: &Presentation,
    subgroup_words: &[Word],
    table_limit: usize,
) -> Result<usize> {
    if table_limit < 1 {
        return Err(Error::InvalidInput("table limit must be at least 1".into()));
    }
    let ncols = 2 * presentation.generator_count;
    let relator_cols: Vec<Vec<usize>> = presentation
        .relators
        .iter()
        .map(|r| word_cols(r, presentation.generator_count))
        .collect::<Result<_>>()?;
    let subgroup_cols: Vec<Vec<usize>> = subgroup_words
        .iter()
        .map(|w| word_cols(w, presentation.generator_count))
        .collect::<Result<_>>()?;

    let mut table = CosetTable::new(ncols, table_limit);
    for cols in &subgroup_cols {
        table.scan_and_fill(0, cols)?;
    }
    let mut coset = 0usize;
    while coset < table.rows.len() {
        if table.is_dead(coset) {
            coset += 1;
            continue;
        }
        for cols in &relator_cols {
            if table.is_dead(coset) {
                break;
            }
            table.scan_and_fill(coset, cols)?;
        }
        if !table.is_dead(coset) {
            for col in 0..ncols {
                if table.entry(coset, col).is_none() {
                    table.define(coset, col)?;
                }
            }
        }
        coset += 1;
    }
    Ok(table.live)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Permutation;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn check_relators_examples() {
        let c2 = FiniteGroup::cyclic(2);
        let pres = Presentation::new(1, vec![w("x0^2")]).unwrap();
        let good = PresentedGroupMap {
            presentation: pres.clone(),
            target: c2,
            images: vec![1],
        };
        assert!(check_relators(&good));

        let c4 = FiniteGroup::cyclic(4);
        let bad = PresentedGroupMap { presentation: pres, target: c4, images: vec![1] };
        assert!(!check_relators(&bad));

        let v4 = {
            let a = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
            let b = Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
            FiniteGroup::from_permutation_generators(4, &[a, b], 100).unwrap()
        };
        let comm = Presentation::new(2, vec![w("x0^-1 x1^-1 x0^1 x1^1")]).unwrap();
        let abelian = PresentedGroupMap { presentation: comm, target: v4, images: vec![1, 2] };
        assert!(check_relators(&abelian));
    }

    #[test]
    fn coset_enumeration_cyclic() {
        let pres = Presentation::new(1, vec![w("x0^3")]).unwrap();
        assert_eq!(coset_enumeration(&pres, &[], 1000).unwrap(), 3);
    }

    #[test]
    fn coset_enumeration_s3() {
        let pres =
            Presentation::new(2, vec![w("x0^2"), w("x1^2"), w("x0^1 x1^1 x0^1 x1^1 x0^1 x1^1")])
                .unwrap();
        assert_eq!(coset_enumeration(&pres, &[], 1000).unwrap(), 6);
        // Index of ⟨x0⟩ is 3.
        assert_eq!(coset_enumeration(&pres, &[w("x0^1")], 1000).unwrap(), 3);
    }

    #[test]
    fn coset_enumeration_trivial_presentation() {
        assert_eq!(coset_enumeration(&Presentation::trivial(), &[], 10).unwrap(), 1);
    }

    #[test]
    fn coset_enumeration_overflow() {
        // Free group of rank 1 never closes.
        let pres = Presentation::new(1, vec![]).unwrap();
        assert!(matches!(
            coset_enumeration(&pres, &[], 50),
            Err(Error::CosetTableOverflow { limit: 50 })
        ));
    }

    #[test]
    fn coset_enumeration_quaternion() {
        // ⟨a, b | a⁴, a²b⁻², b⁻¹aba⟩ presents Q₈.
        let pres = Presentation::new(
            2,
            vec![w("x0^4"), w("x0^2 x1^-2"), w("x1^-1 x0^1 x1^1 x0^1")],
        )
        .unwrap();
        assert_eq!(coset_enumeration(&pres, &[], 1000).unwrap(), 8);
    }

    #[test]
    fn extension_presentation_c4_over_c2() {
        let c4 = FiniteGroup::cyclic(4);
        let n = c4.subgroup_closure(&[2]);
        let (q, proj) = c4.quotient(&n).unwrap();
        let q_pres = Presentation::new(1, vec![w("x0^2")]).unwrap();
        let q_map =
            PresentedGroupMap { presentation: q_pres.clone(), target: q.clone(), images: vec![1] };
        let (pres, parts, map) =
            extension_presentation(&c4, &n, 2, &q_pres, &q_map, &proj, &[2]).unwrap();
        // ⟨x, y | x²y⁻¹, y², [x,y]⟩ with w_{x²} = y.
        assert_eq!(pres.generator_count, 2);
        assert_eq!(parts.w_words, vec![w("x1^1")]);
        assert_eq!(parts.r_relators, vec![w("x0^2 x1^-1")]);
        assert!(check_relators(&map));
        assert_eq!(coset_enumeration(&pres, &[], 1000).unwrap(), 4);
    }

    #[test]
    fn extension_presentation_trivial_quotient() {
        // G = C₂ over N = C₂ with trivial Q gives ⟨y | y²⟩.
        let c2 = FiniteGroup::cyclic(2);
        let n = c2.full_subgroup();
        let (q, proj) = c2.quotient(&n).unwrap();
        let q_pres = Presentation::trivial();
        let q_map =
            PresentedGroupMap { presentation: q_pres.clone(), target: q, images: vec![] };
        let (pres, _, map) =
            extension_presentation(&c2, &n, 2, &q_pres, &q_map, &proj, &[1]).unwrap();
        assert_eq!(pres.generator_count, 1);
        assert_eq!(pres.relators, vec![w("x0^2")]);
        assert!(check_relators(&map));
    }

    #[test]
    fn extension_presentation_q8_over_center() {
        let q8 = crate::catalog::quaternion8();
        let z = q8.center();
        let (v4, proj) = q8.quotient(&z).unwrap();
        let q_pres =
            Presentation::new(2, vec![w("x0^2"), w("x1^2"), w("x0^-1 x1^-1 x0^1 x1^1")]).unwrap();
        let q_map = PresentedGroupMap {
            presentation: q_pres.clone(),
            target: v4.clone(),
            images: vec![1, 2],
        };
        let z_gen = *z.members().iter().find(|&&m| m != 0).unwrap();
        let (_, parts, map) =
            extension_presentation(&q8, &z, 2, &q_pres, &q_map, &proj, &[z_gen]).unwrap();
        // All three quotient relators lift to the central involution.
        assert_eq!(parts.w_words, vec![w("x2^1"), w("x2^1"), w("x2^1")]);
        assert!(check_relators(&map));
    }

    #[test]
    fn pgroup_presentation_cyclic_p() {
        for p in [2u64, 3, 5] {
            let g = FiniteGroup::cyclic(p as usize);
            let (pres, map) = pgroup_presentation(&g, p).unwrap();
            assert_eq!(pres.generator_count, 1);
            assert_eq!(pres.relators, vec![Word::power(0, p as i64)]);
            assert!(check_relators(&map));
        }
    }

    #[test]
    fn pgroup_presentation_elementary_abelian() {
        let g = crate::catalog::elementary_abelian(3, 2).unwrap();
        let (pres, map) = pgroup_presentation(&g, 3).unwrap();
        assert_eq!(pres.generator_count, 2);
        // y_i³ and one commutator.
        assert_eq!(pres.relators.len(), 3);
        assert!(pres.exponent_sums_divisible_by(3));
        assert!(check_relators(&map));
        assert_eq!(coset_enumeration(&pres, &[], 1000).unwrap(), 9);
    }

    #[test]
    fn pgroup_presentation_q8() {
        let q8 = crate::catalog::quaternion8();
        let (pres, map) = pgroup_presentation(&q8, 2).unwrap();
        assert_eq!(pres.generator_count, 2);
        assert!(pres.exponent_sums_divisible_by(2));
        assert!(check_relators(&map));
        assert_eq!(coset_enumeration(&pres, &[], 1000).unwrap(), 8);
    }

    #[test]
    fn pgroup_presentation_trivial() {
        let g = FiniteGroup::cyclic(1);
        let (pres, _) = pgroup_presentation(&g, 2).unwrap();
        assert_eq!(pres.generator_count, 0);
        assert!(pres.relators.is_empty());
    }

    #[test]
    fn pgroup_presentation_rejects_non_p_groups() {
        let c6 = FiniteGroup::cyclic(6);
        assert!(matches!(pgroup_presentation(&c6, 2), Err(Error::NotPGroup { .. })));
    }
}
