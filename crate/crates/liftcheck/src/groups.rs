//! Finite groups realized by permutations or by an explicit multiplication
//! table, plus the structural subroutines everything else consumes:
//! stabilizers, center, Ω₁, Sylow subgroups, quotients, subgroup
//! enumeration, and coset actions.
//!
//! Elements are canonically ordered: identity first, then breadth-first
//! discovery order over the generator list as given. Every "arbitrary but
//! deterministic" downstream choice (coset representative, lift) takes the
//! minimal index in this order.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::linalg::is_prime;
use crate::{Error, Result};

/// Default cap on closure sizes.
pub const DEFAULT_ORDER_LIMIT: usize = 20_000;
/// Default cap for exhaustive subgroup enumeration.
pub const DEFAULT_SUBGROUP_BOUND: usize = 48;

/// A bijection on `{0, …, n−1}` stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidInput(format!(
                    "image array {images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `degree` points from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from >= degree || to >= degree {
                    return Err(Error::PointOutOfRange { point: from.max(to), degree });
                }
                images[from] = to;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` then `other`: points move by `self` first, matching the
    /// right-action convention `x·(ab) = (x·a)·b`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }
}

impl fmt::Display for Permutation {
    /// Disjoint-cycle notation; identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut point = start;
            let mut first = true;
            while !seen[point] {
                seen[point] = true;
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{point}")?;
                point = self.images[point];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Breadth-first closure of a generating set under a multiplication,
/// starting from the identity. Element 0 is the identity; the rest appear
/// in discovery order.
pub fn closure_elements<T, F>(identity: T, generators: &[T], mul: F, limit: usize) -> Result<Vec<T>>
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<T, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let product = mul(&elements[i], g);
            if !index.contains_key(&product) {
                if elements.len() >= limit {
                    return Err(Error::OrderLimitExceeded { limit });
                }
                index.insert(product.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(product);
            }
        }
    }
    Ok(elements)
}

/// A finite group with a full multiplication table over canonically indexed
/// elements, optionally carrying a permutation realization.
#[derive(Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    /// Permutation realization aligned with element indices, when present.
    perms: Option<Vec<Permutation>>,
    degree: Option<usize>,
}

impl FiniteGroup {
    pub const IDENTITY: usize = 0;

    /// Closure of permutation generators on `degree` points.
    pub fn from_permutation_generators(
        degree: usize,
        generators: &[Permutation],
        limit: usize,
    ) -> Result<Arc<Self>> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DimensionMismatch(format!(
                    "generator degree {} != {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let elements =
            closure_elements(Permutation::identity(degree), generators, |a, b| a.then(b), limit)?;
        Ok(Arc::new(Self::from_permutation_elements(degree, elements)))
    }

    /// Builds the table group of an already-closed permutation element list.
    /// The list must contain the identity at position 0.
    fn from_permutation_elements(degree: usize, elements: Vec<Permutation>) -> Self {
        let order = elements.len();
        let index: HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let p = elements[a].then(&elements[b]);
                table[a * order + b] = index[&p] as u32;
            }
        }
        let inverses = invert_table(&table, order);
        FiniteGroup { order, table, inverses, perms: Some(elements), degree: Some(degree) }
    }

    /// Builds a group from an explicit multiplication table (row `a`, column
    /// `b` holds `a·b`). Element 0 must be the identity. Associativity is
    /// fully checked below order 64 and spot-checked on sampled triples
    /// above.
    pub fn from_table(table_rows: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        let order = table_rows.len();
        if order == 0 {
            return Err(Error::InvalidInput("empty multiplication table".into()));
        }
        let mut table = vec![0u32; order * order];
        for (a, row) in table_rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidInput("ragged multiplication table".into()));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::InvalidInput(format!(
                        "table entry {v} out of range for order {order}"
                    )));
                }
                table[a * order + b] = v as u32;
            }
        }
        Self::validate_table(&table, order)?;
        let inverses = invert_table(&table, order);
        Ok(Arc::new(FiniteGroup { order, table, inverses, perms: None, degree: None }))
    }

    fn validate_table(table: &[u32], order: usize) -> Result<()> {
        for a in 0..order {
            if table[a * order] != a as u32 || table[a] != a as u32 {
                return Err(Error::InvalidInput("element 0 is not a two-sided identity".into()));
            }
            // Rows and columns must be permutations (cancellation).
            let row: BTreeSet<u32> = (0..order).map(|b| table[a * order + b]).collect();
            let col: BTreeSet<u32> = (0..order).map(|b| table[b * order + a]).collect();
            if row.len() != order || col.len() != order {
                return Err(Error::InvalidInput("table is not cancellative".into()));
            }
            if !(0..order).any(|b| table[a * order + b] == 0) {
                return Err(Error::InvalidInput(format!("element {a} has no inverse")));
            }
        }
        let mul = |a: usize, b: usize| table[a * order + b] as usize;
        if order < 64 {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                            return Err(Error::InvalidInput(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            // Deterministic sample of triples.
            let step = order / 17 + 1;
            for a in (0..order).step_by(step) {
                for b in (0..order).step_by(step) {
                    for c in (0..order).step_by(step) {
                        if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                            return Err(Error::InvalidInput(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Closure of abstract generators given by a multiplication closure over
    /// an arbitrary hashable element type, keeping the element payloads.
    pub fn from_abstract_generators<T, F>(
        identity: T,
        generators: &[T],
        mul: F,
        limit: usize,
    ) -> Result<(Arc<Self>, Vec<T>)>
    where
        T: Clone + Eq + std::hash::Hash,
        F: Fn(&T, &T) -> T,
    {
        let elements = closure_elements(identity, generators, &mul, limit)?;
        let order = elements.len();
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = index[&mul(&elements[a], &elements[b])] as u32;
            }
        }
        let inverses = invert_table(&table, order);
        Ok((
            Arc::new(FiniteGroup { order, table, inverses, perms: None, degree: None }),
            elements,
        ))
    }

    /// The cyclic group of order `n` in its regular permutation realization.
    pub fn cyclic(n: usize) -> Arc<Self> {
        let shift = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        Self::from_permutation_generators(n, &[shift], n + 1).unwrap()
    }

    /// True when `other` is the same multiplication table on the same
    /// element indexing; deterministic constructors yield identical tables
    /// for repeated calls.
    pub fn same_multiplication(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn conjugate(&self, g: usize, by: usize) -> usize {
        self.mul(self.mul(self.inv(by), g), by)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut acc = a;
        let mut n = 1;
        while acc != Self::IDENTITY {
            acc = self.mul(acc, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn permutation(&self, element: usize) -> Option<&Permutation> {
        self.perms.as_ref().map(|ps| &ps[element])
    }

    pub fn permutations(&self) -> Option<&[Permutation]> {
        self.perms.as_deref()
    }

    /// Index of a permutation element, when this group has a permutation
    /// realization containing it.
    pub fn permutation_index(&self, p: &Permutation) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|q| q == p)
    }

    /// True when `|G|` is a power of `p`.
    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.order as u64;
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }

    /// Largest power of `p` dividing the group order.
    pub fn p_part(&self, p: u64) -> usize {
        let mut part = 1usize;
        let mut n = self.order as u64;
        while n % p == 0 {
            part *= p as usize;
            n /= p;
        }
        part
    }

    // ------------------------------------------------------------------
    // Subgroup machinery
    // ------------------------------------------------------------------

    /// Closure of a set of element indices inside this group.
    pub fn subgroup_closure(&self, generators: &[usize]) -> SubgroupHandle {
        let members = closure_elements(
            Self::IDENTITY,
            generators,
            |&a, &b| self.mul(a, b),
            self.order + 1,
        )
        .expect("subgroup closure is bounded by the parent order");
        SubgroupHandle::from_members(members)
    }

    pub fn trivial_subgroup(&self) -> SubgroupHandle {
        SubgroupHandle::from_members(vec![Self::IDENTITY])
    }

    pub fn full_subgroup(&self) -> SubgroupHandle {
        SubgroupHandle::from_members((0..self.order).collect())
    }

    /// `{ g : ω·g = ω }` for the permutation realization.
    pub fn stabilizer(&self, point: usize) -> Result<SubgroupHandle> {
        let perms = self
            .perms
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("group has no permutation realization".into()))?;
        let degree = self.degree.unwrap_or(0);
        if point >= degree {
            return Err(Error::PointOutOfRange { point, degree });
        }
        let members: Vec<usize> =
            (0..self.order).filter(|&g| perms[g].apply(point) == point).collect();
        let handle = SubgroupHandle::from_members(members);
        debug_assert_eq!(handle.order() * self.orbit(point).unwrap().len(), self.order);
        Ok(handle)
    }

    /// Orbit of a point under the permutation realization, ascending.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        let perms = self
            .perms
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("group has no permutation realization".into()))?;
        let degree = self.degree.unwrap_or(0);
        if point >= degree {
            return Err(Error::PointOutOfRange { point, degree });
        }
        let mut orbit: BTreeSet<usize> = BTreeSet::new();
        for p in perms {
            orbit.insert(p.apply(point));
        }
        Ok(orbit.into_iter().collect())
    }

    /// Orbits of the permutation realization, each ascending, ordered by
    /// minimal point.
    pub fn orbits(&self) -> Result<Vec<Vec<usize>>> {
        let degree = self
            .degree
            .ok_or_else(|| Error::InvalidInput("group has no permutation realization".into()))?;
        let mut seen = vec![false; degree];
        let mut orbits = Vec::new();
        for point in 0..degree {
            if seen[point] {
                continue;
            }
            let orbit = self.orbit(point)?;
            for &q in &orbit {
                seen[q] = true;
            }
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// `{ g : gx = xg for all x }`.
    pub fn center(&self) -> SubgroupHandle {
        let members: Vec<usize> = (0..self.order)
            .filter(|&g| (0..self.order).all(|x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        SubgroupHandle::from_members(members)
    }

    /// Subgroup of an abelian p-subgroup generated by elements of order
    /// dividing `p`; the result is elementary abelian.
    pub fn omega1(&self, subgroup: &SubgroupHandle, p: u64) -> Result<SubgroupHandle> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let order = subgroup.order();
        if !is_p_power(order as u64, p) {
            return Err(Error::NotPGroup { p, order });
        }
        let gens: Vec<usize> = subgroup
            .members()
            .iter()
            .copied()
            .filter(|&g| {
                let o = self.element_order(g);
                o == 1 || o as u64 == p
            })
            .collect();
        let out = self.subgroup_closure(&gens);
        debug_assert!(out
            .members()
            .iter()
            .all(|&g| g == Self::IDENTITY || self.element_order(g) as u64 == p));
        Ok(out)
    }

    /// Normalizer of a subgroup.
    pub fn normalizer(&self, subgroup: &SubgroupHandle) -> SubgroupHandle {
        let members: Vec<usize> = (0..self.order)
            .filter(|&g| {
                subgroup.members().iter().all(|&s| subgroup.contains(self.conjugate(s, g)))
            })
            .collect();
        SubgroupHandle::from_members(members)
    }

    /// A Sylow p-subgroup: grow a maximal-order p-element's cyclic group
    /// inside iterated normalizers, scanning elements in canonical order.
    pub fn sylow(&self, p: u64) -> Result<SubgroupHandle> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let target = self.p_part(p);
        if target == 1 {
            return Ok(self.trivial_subgroup());
        }
        // Seed: first element of maximal p-power order.
        let mut best: (usize, usize) = (1, Self::IDENTITY);
        for g in 0..self.order {
            let o = self.element_order(g);
            if is_p_power(o as u64, p) && o > best.0 {
                best = (o, g);
            }
        }
        let mut current = self.subgroup_closure(&[best.1]);
        while current.order() < target {
            let normalizer = self.normalizer(&current);
            let mut grown = None;
            for &g in normalizer.members() {
                if current.contains(g) || !is_p_power(self.element_order(g) as u64, p) {
                    continue;
                }
                let mut gens = current.members().to_vec();
                gens.push(g);
                let candidate = self.subgroup_closure(&gens);
                if is_p_power(candidate.order() as u64, p) && candidate.order() > current.order() {
                    grown = Some(candidate);
                    break;
                }
            }
            current = grown.expect("a p-subgroup below the Sylow order must grow");
        }
        Ok(current)
    }

    pub fn is_normal(&self, subgroup: &SubgroupHandle) -> bool {
        (0..self.order)
            .all(|g| subgroup.members().iter().all(|&s| subgroup.contains(self.conjugate(s, g))))
    }

    /// Coset multiplication table on the cosets of a normal subgroup, with
    /// the verified projection homomorphism.
    pub fn quotient(
        self: &Arc<Self>,
        normal: &SubgroupHandle,
    ) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        // Coset of g is keyed by its minimal member.
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            for &n in normal.members() {
                coset_of[self.mul(n, g)] = idx;
            }
            reps.push(g);
        }
        let count = reps.len();
        let mut table = vec![vec![0usize; count]; count];
        for a in 0..count {
            for b in 0..count {
                table[a][b] = coset_of[self.mul(reps[a], reps[b])];
            }
        }
        let quotient = FiniteGroup::from_table(table)?;
        let hom = GroupHom::verified(Arc::clone(self), quotient, coset_of)?;
        Ok((hom.target.clone(), hom))
    }

    /// Right-multiplication action on the right cosets of `subgroup`,
    /// as a verified homomorphism into the induced permutation group.
    pub fn coset_action(self: &Arc<Self>, subgroup: &SubgroupHandle) -> Result<GroupHom> {
        // Enumerate right cosets Sg, keyed by minimal member; coset of the
        // identity comes first.
        let mut coset_of = vec![usize::MAX; self.order];
        let mut count = 0usize;
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &s in subgroup.members() {
                coset_of[self.mul(s, g)] = count;
            }
            count += 1;
        }
        let perm_of = |g: usize| -> Permutation {
            let mut images = vec![usize::MAX; count];
            let mut rep_seen = vec![false; count];
            for x in 0..self.order {
                let c = coset_of[x];
                if !rep_seen[c] {
                    rep_seen[c] = true;
                    images[c] = coset_of[self.mul(x, g)];
                }
            }
            Permutation { images }
        };
        let elements: Vec<Permutation> = (0..self.order).map(perm_of).collect();
        // Deduplicate into the image group, identity first then discovery
        // order of the element scan.
        let mut distinct: Vec<Permutation> = Vec::new();
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        let mut images = Vec::with_capacity(self.order);
        for p in elements {
            let next = distinct.len();
            let idx = *index.entry(p.clone()).or_insert_with(|| {
                distinct.push(p);
                next
            });
            images.push(idx);
        }
        let target = Arc::new(FiniteGroup::from_permutation_elements(count, distinct));
        let hom = GroupHom::verified(Arc::clone(self), target, images)?;
        // The stabilizer of the coset S·1 must pull back to exactly S.
        debug_assert_eq!(
            (0..self.order)
                .filter(|&g| hom.target.permutation(hom.images[g]).unwrap().apply(0) == 0)
                .collect::<Vec<_>>(),
            subgroup.members()
        );
        Ok(hom)
    }

    /// Every subgroup exactly once, ascending by (order, members), found by
    /// iterated extension of cyclic subgroups.
    pub fn all_subgroups(&self, bound: usize) -> Result<Vec<SubgroupHandle>> {
        if self.order > bound {
            return Err(Error::OrderLimitExceeded { limit: bound });
        }
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = self.trivial_subgroup();
        seen.insert(trivial.members().to_vec());
        let mut queue: VecDeque<SubgroupHandle> = VecDeque::from([trivial]);
        while let Some(current) = queue.pop_front() {
            for g in 0..self.order {
                if current.contains(g) {
                    continue;
                }
                let mut gens = current.members().to_vec();
                gens.push(g);
                let extended = self.subgroup_closure(&gens);
                if seen.insert(extended.members().to_vec()) {
                    queue.push_back(extended);
                }
            }
        }
        let mut out: Vec<SubgroupHandle> =
            seen.into_iter().map(SubgroupHandle::from_members).collect();
        out.sort_by_key(|h| (h.order(), h.members().to_vec()));
        Ok(out)
    }

    /// Extracts a subgroup as a standalone group; returns the new group and
    /// the map from its element indices to parent indices (identity first,
    /// then ascending parent index).
    pub fn subgroup_as_group(&self, handle: &SubgroupHandle) -> (Arc<FiniteGroup>, Vec<usize>) {
        let members = handle.members().to_vec();
        let parent_index_of: HashMap<usize, usize> =
            members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let order = members.len();
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = parent_index_of[&self.mul(members[a], members[b])] as u32;
            }
        }
        let inverses = invert_table(&table, order);
        let perms = self
            .perms
            .as_ref()
            .map(|ps| members.iter().map(|&m| ps[m].clone()).collect());
        let group =
            FiniteGroup { order, table, inverses, perms, degree: self.degree };
        (Arc::new(group), members)
    }
}

fn invert_table(table: &[u32], order: usize) -> Vec<u32> {
    let mut inverses = vec![0u32; order];
    for a in 0..order {
        for b in 0..order {
            if table[a * order + b] == 0 {
                inverses[a] = b as u32;
                break;
            }
        }
    }
    inverses
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A subgroup of some parent group, stored as the sorted set of member
/// element indices. Handles are only produced by closure operations, so the
/// member set is closed and contains the identity by construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgroupHandle {
    members: Vec<usize>,
}

impl SubgroupHandle {
    fn from_members(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        SubgroupHandle { members }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.binary_search(&element).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [FiniteGroup::IDENTITY]
    }

    /// `g⁻¹ S g`.
    pub fn conjugate(&self, parent: &FiniteGroup, by: usize) -> SubgroupHandle {
        SubgroupHandle::from_members(
            self.members.iter().map(|&s| parent.conjugate(s, by)).collect(),
        )
    }
}

/// A verified homomorphism between finite groups, stored as the full image
/// array over source element indices.
#[derive(Debug, Clone)]
pub struct GroupHom {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub images: Vec<usize>,
}

impl GroupHom {
    /// Checks `images[a·b] = images[a]·images[b]` on all pairs and that the
    /// identity maps to the identity.
    pub fn verified(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::DimensionMismatch(format!(
                "hom image array has length {} for source order {}",
                images.len(),
                source.order()
            )));
        }
        if images[FiniteGroup::IDENTITY] != FiniteGroup::IDENTITY {
            return Err(Error::InvalidInput("hom does not fix the identity".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(Error::InvalidInput(format!(
                        "hom is not multiplicative at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn apply(&self, element: usize) -> usize {
        self.images[element]
    }

    pub fn kernel(&self) -> SubgroupHandle {
        SubgroupHandle::from_members(
            (0..self.source.order()).filter(|&g| self.images[g] == FiniteGroup::IDENTITY).collect(),
        )
    }

    pub fn is_surjective(&self) -> bool {
        let hit: BTreeSet<usize> = self.images.iter().copied().collect();
        hit.len() == self.target.order()
    }

    /// Minimal-index preimage of a target element, if any.
    pub fn min_preimage(&self, target_element: usize) -> Option<usize> {
        self.images.iter().position(|&i| i == target_element)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym3() -> Arc<FiniteGroup> {
        let a = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        FiniteGroup::from_permutation_generators(3, &[a, b], 100).unwrap()
    }

    fn alt4() -> Arc<FiniteGroup> {
        let a = Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![1, 2, 3]]).unwrap();
        FiniteGroup::from_permutation_generators(4, &[a, b], 100).unwrap()
    }

    fn quaternion8() -> Arc<FiniteGroup> {
        crate::catalog::quaternion8()
    }

    #[test]
    fn closure_of_nothing_is_trivial() {
        let g = FiniteGroup::from_permutation_generators(3, &[], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn closure_s4() {
        let four_cycle = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let swap = Permutation::from_cycles(4, &[vec![0, 1]]).unwrap();
        let g = FiniteGroup::from_permutation_generators(4, &[four_cycle, swap], 100).unwrap();
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn closure_klein_four() {
        let a = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let g = FiniteGroup::from_permutation_generators(4, &[a, b], 100).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn closure_limit_enforced() {
        let four_cycle = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let swap = Permutation::from_cycles(4, &[vec![0, 1]]).unwrap();
        assert!(matches!(
            FiniteGroup::from_permutation_generators(4, &[four_cycle, swap], 10),
            Err(Error::OrderLimitExceeded { limit: 10 })
        ));
    }

    #[test]
    fn stabilizers() {
        assert_eq!(sym3().stabilizer(0).unwrap().order(), 2);
        assert_eq!(alt4().stabilizer(0).unwrap().order(), 3);
        let psl25 = crate::catalog::psl2_action(5).unwrap();
        assert_eq!(psl25.group.stabilizer(5).unwrap().order(), 10);
        assert!(sym3().stabilizer(3).is_err());
    }

    #[test]
    fn orbit_stabilizer_relation() {
        for g in [sym3(), alt4(), quaternion8()] {
            let Some(degree) = g.degree() else { continue };
            for point in 0..degree {
                let orbit = g.orbit(point).unwrap();
                let stab = g.stabilizer(point).unwrap();
                assert_eq!(orbit.len() * stab.order(), g.order());
            }
        }
    }

    #[test]
    fn stabilizers_in_an_orbit_are_conjugate() {
        let g = alt4();
        let stab0 = g.stabilizer(0).unwrap();
        for moved in 0..g.order() {
            let image = g.permutation(moved).unwrap().apply(0);
            let stab_image = g.stabilizer(image).unwrap();
            assert_eq!(stab0.conjugate(&g, moved), stab_image);
        }
    }

    #[test]
    fn center_of_q8_has_order_two() {
        let q8 = quaternion8();
        let z = q8.center();
        assert_eq!(z.order(), 2);
    }

    #[test]
    fn center_of_abelian_group_is_everything() {
        let c6 = FiniteGroup::cyclic(6);
        assert_eq!(c6.center().order(), 6);
    }

    #[test]
    fn omega1_of_c4() {
        let c4 = FiniteGroup::cyclic(4);
        let omega = c4.omega1(&c4.full_subgroup(), 2).unwrap();
        assert_eq!(omega.order(), 2);
        assert!(c4.omega1(&c4.full_subgroup(), 3).is_err());
    }

    #[test]
    fn sylow_subgroups() {
        let s3 = sym3();
        assert_eq!(s3.sylow(3).unwrap().order(), 3);
        assert_eq!(s3.sylow(2).unwrap().order(), 2);
        let psl25 = crate::catalog::psl2_action(5).unwrap();
        let stab = psl25.group.stabilizer(5).unwrap();
        let (stab_group, _) = psl25.group.subgroup_as_group(&stab);
        assert_eq!(stab_group.sylow(2).unwrap().order(), 2);
        let q8 = quaternion8();
        assert_eq!(q8.sylow(2).unwrap().order(), 8);
        assert!(s3.sylow(4).is_err());
    }

    #[test]
    fn sylow_is_deterministic() {
        let s3 = sym3();
        assert_eq!(s3.sylow(2).unwrap(), s3.sylow(2).unwrap());
    }

    #[test]
    fn quotient_by_trivial_subgroup() {
        let s3 = sym3();
        let (q, proj) = s3.quotient(&s3.trivial_subgroup()).unwrap();
        assert_eq!(q.order(), 6);
        assert!(proj.kernel().is_trivial());
    }

    #[test]
    fn quotient_q8_by_center_is_klein_four() {
        let q8 = quaternion8();
        let (q, proj) = q8.quotient(&q8.center()).unwrap();
        assert_eq!(q.order(), 4);
        assert!((1..4).all(|g| q.element_order(g) == 2));
        assert_eq!(proj.kernel(), q8.center());
    }

    #[test]
    fn quotient_c4_by_c2() {
        let c4 = FiniteGroup::cyclic(4);
        let c2_inside = c4.subgroup_closure(&[2]);
        let (q, _) = c4.quotient(&c2_inside).unwrap();
        assert_eq!(q.order(), 2);
    }

    #[test]
    fn quotient_requires_normality() {
        let s3 = sym3();
        let point_stab = s3.stabilizer(0).unwrap();
        assert!(matches!(s3.quotient(&point_stab), Err(Error::NotNormal)));
    }

    #[test]
    fn subgroup_counts() {
        let c5 = FiniteGroup::cyclic(5);
        assert_eq!(c5.all_subgroups(48).unwrap().len(), 2);
        let a = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let v4 = FiniteGroup::from_permutation_generators(4, &[a, b], 100).unwrap();
        assert_eq!(v4.all_subgroups(48).unwrap().len(), 5);
        assert_eq!(sym3().all_subgroups(48).unwrap().len(), 6);
    }

    #[test]
    fn subgroup_bound_is_enforced() {
        let c5 = FiniteGroup::cyclic(5);
        assert!(c5.all_subgroups(4).is_err());
    }

    #[test]
    fn coset_action_on_itself_and_trivial() {
        let s3 = sym3();
        let trivial_action = s3.coset_action(&s3.full_subgroup()).unwrap();
        assert_eq!(trivial_action.target.order(), 1);
        let regular = s3.coset_action(&s3.trivial_subgroup()).unwrap();
        assert_eq!(regular.target.degree(), Some(6));
        assert_eq!(regular.target.order(), 6);
    }

    #[test]
    fn coset_action_stabilizer_is_the_subgroup() {
        let a4 = alt4();
        let c3 = a4.all_subgroups(48).unwrap().into_iter().find(|h| h.order() == 3).unwrap();
        let action = a4.coset_action(&c3).unwrap();
        assert_eq!(action.target.degree(), Some(4));
        // Stabilizer of the coset of the identity pulls back to exactly C3.
        let stab_members: Vec<usize> = (0..a4.order())
            .filter(|&g| action.target.permutation(action.apply(g)).unwrap().apply(0) == 0)
            .collect();
        assert_eq!(stab_members, c3.members());
    }

    #[test]
    fn table_group_roundtrip() {
        // Klein four group as an explicit table.
        let table = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        let g = FiniteGroup::from_table(table).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert_eq!(g.inv(3), 3);
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 0], vec![1, 1]]).is_err());
    }

    #[test]
    fn permutation_cycle_display() {
        let p = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(p.to_string(), "(0 1 2 3)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        let double = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(double.to_string(), "(0 1)(2 3)");
    }

    #[test]
    fn hom_verification_rejects_non_homs() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        assert!(GroupHom::verified(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).is_ok());
        assert!(GroupHom::verified(c4, c2, vec![0, 1, 1, 0]).is_err());
    }
}
