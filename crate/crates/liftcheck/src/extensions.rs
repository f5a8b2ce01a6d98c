//! Central extensions `1 → F_p → H → G → 1` realized from normalized
//! 2-cocycles, the cocycle and coboundary spaces used to enumerate all
//! extension classes of a small group, and liftability of subgroups decided
//! by three cross-checking methods: relator obstructions after Gaschütz
//! reduction to a Sylow subgroup, a coboundary solve, and brute-force
//! complement search.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::groups::{FiniteGroup, GroupHom, SubgroupHandle};
use crate::linalg::{max_independent_subset, solve, FpMatrix, FpVector};
use crate::presentations::{pgroup_presentation, Presentation};
use crate::{Error, Result};

/// Order bound under which the brute-force complement search runs.
pub const BRUTE_FORCE_BOUND: usize = 64;

/// A normalized `F_p`-valued 2-cocycle on a group of a given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    pub p: u64,
    order: usize,
    table: Vec<u64>,
}

impl Cocycle {
    pub fn zero(p: u64, order: usize) -> Self {
        Cocycle { p, order, table: vec![0; order * order] }
    }

    /// Builds a cocycle from a full value table, verifying normalization and
    /// the cocycle identity (all triples below order 256, a deterministic
    /// sample above).
    pub fn verified(group: &FiniteGroup, p: u64, rows: &[Vec<u64>]) -> Result<Self> {
        let order = group.order();
        if rows.len() != order || rows.iter().any(|r| r.len() != order) {
            return Err(Error::DimensionMismatch(format!(
                "cocycle table shape does not match group order {order}"
            )));
        }
        let mut table = vec![0u64; order * order];
        for (g, row) in rows.iter().enumerate() {
            for (h, &v) in row.iter().enumerate() {
                table[g * order + h] = v % p;
            }
        }
        let c = Cocycle { p, order, table };
        for g in 0..order {
            if c.get(0, g) != 0 || c.get(g, 0) != 0 {
                return Err(Error::CocycleNotNormalized);
            }
        }
        let check = |g: usize, h: usize, k: usize| -> Result<()> {
            let lhs = (c.get(g, h) + c.get(group.mul(g, h), k)) % p;
            let rhs = (c.get(h, k) + c.get(g, group.mul(h, k))) % p;
            if lhs != rhs {
                return Err(Error::CocycleIdentity(g, h, k));
            }
            Ok(())
        };
        if order <= 256 {
            for g in 0..order {
                for h in 0..order {
                    for k in 0..order {
                        check(g, h, k)?;
                    }
                }
            }
        } else {
            let step = order / 61 + 1;
            for g in (0..order).step_by(step) {
                for h in 0..order {
                    for k in (0..order).step_by(step) {
                        check(g, h, k)?;
                    }
                }
            }
        }
        Ok(c)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, g: usize, h: usize) -> u64 {
        self.table[g * self.order + h]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.order)
            .map(|g| (0..self.order).map(|h| self.get(g, h)).collect())
            .collect()
    }

    /// Adds a coboundary `δf(g,h) = f(g) + f(h) − f(gh)`.
    pub fn plus_coboundary(&self, group: &FiniteGroup, f: &[u64]) -> Cocycle {
        let p = self.p;
        let mut out = self.clone();
        for g in 0..self.order {
            for h in 0..self.order {
                let delta = (f[g] + f[h] + p - f[group.mul(g, h)] % p) % p;
                out.table[g * self.order + h] = (out.get(g, h) + delta) % p;
            }
        }
        out
    }
}

/// A central extension of `base` by `F_p`, realized as the table group on
/// pairs `(a, g)` with `(a₁,g₁)(a₂,g₂) = (a₁+a₂+c(g₁,g₂), g₁g₂)`, encoded
/// as element index `g·p + a`.
#[derive(Debug)]
pub struct CentralExtension {
    pub base: Arc<FiniteGroup>,
    pub p: u64,
    pub cocycle: Cocycle,
    pub h: Arc<FiniteGroup>,
    /// `A⁺ → H`, `a ↦ (a, 1)`.
    pub iota: GroupHom,
    /// `H → G`, `(a, g) ↦ g`.
    pub pi: GroupHom,
    h_subgroups: OnceLock<Option<Vec<SubgroupHandle>>>,
}

/// Builds the extension defined by a verified cocycle.
pub fn build_extension(base: &Arc<FiniteGroup>, cocycle: Cocycle) -> Result<CentralExtension> {
    if cocycle.order() != base.order() {
        return Err(Error::DimensionMismatch(format!(
            "cocycle on {} elements for group of order {}",
            cocycle.order(),
            base.order()
        )));
    }
    let p = cocycle.p;
    let order = base.order();
    let h_order = order * p as usize;
    let encode = |a: u64, g: usize| -> usize { g * p as usize + a as usize };
    let mut rows = vec![vec![0usize; h_order]; h_order];
    for g1 in 0..order {
        for a1 in 0..p {
            for g2 in 0..order {
                for a2 in 0..p {
                    let a = (a1 + a2 + cocycle.get(g1, g2)) % p;
                    rows[encode(a1, g1)][encode(a2, g2)] = encode(a, base.mul(g1, g2));
                }
            }
        }
    }
    let h = FiniteGroup::from_table(rows)?;
    let a_group = FiniteGroup::cyclic(p as usize);
    let iota = GroupHom::verified(
        a_group,
        Arc::clone(&h),
        (0..p as usize).collect(),
    )?;
    let pi = GroupHom::verified(
        Arc::clone(&h),
        Arc::clone(base),
        (0..h_order).map(|idx| idx / p as usize).collect(),
    )?;
    // Im ι must be central and equal to ker π.
    for a in 0..p as usize {
        if (0..h_order).any(|x| h.mul(a, x) != h.mul(x, a)) {
            return Err(Error::NotCentral);
        }
    }
    debug_assert_eq!(pi.kernel().members(), (0..p as usize).collect::<Vec<_>>());
    Ok(CentralExtension {
        base: Arc::clone(base),
        p,
        cocycle,
        h,
        iota,
        pi,
        h_subgroups: OnceLock::new(),
    })
}

impl CentralExtension {
    pub fn encode(&self, a: u64, g: usize) -> usize {
        g * self.p as usize + (a % self.p) as usize
    }

    pub fn decode(&self, idx: usize) -> (u64, usize) {
        ((idx % self.p as usize) as u64, idx / self.p as usize)
    }

    /// `ι(a)` as an element index of `H`.
    pub fn iota_element(&self, a: u64) -> usize {
        (a % self.p) as usize
    }

    /// The minimal-index preimage of a base element: `(0, g)`.
    pub fn min_lift(&self, g: usize) -> usize {
        self.encode(0, g)
    }

    /// The full preimage `Sπ⁻¹` as a subgroup of `H`.
    pub fn preimage(&self, subgroup: &SubgroupHandle) -> SubgroupHandle {
        let members: Vec<usize> = subgroup
            .members()
            .iter()
            .flat_map(|&g| (0..self.p).map(move |a| self.encode(a, g)))
            .collect();
        self.h.subgroup_closure(&members)
    }

    fn all_h_subgroups(&self) -> Option<&Vec<SubgroupHandle>> {
        self.h_subgroups
            .get_or_init(|| {
                if self.h.order() <= BRUTE_FORCE_BOUND {
                    Some(self.h.all_subgroups(BRUTE_FORCE_BOUND).expect("within bound"))
                } else {
                    None
                }
            })
            .as_ref()
    }
}

/// The spaces `Z²`, `B²`, and a transversal of `B²` in `Z²` for a small
/// group, with cocycle tables flattened over the index pairs `(g, h)`,
/// `g, h ≠ 1`.
#[derive(Debug)]
pub struct CocycleSpace {
    pub p: u64,
    pub z_basis: Vec<Cocycle>,
    pub b_basis: Vec<Cocycle>,
    /// One representative per `H²` class, the zero class first.
    pub representatives: Vec<Cocycle>,
}

fn vector_to_cocycle(group: &FiniteGroup, p: u64, v: &FpVector) -> Cocycle {
    let order = group.order();
    let mut c = Cocycle::zero(p, order);
    for g in 1..order {
        for h in 1..order {
            c.table[g * order + h] = v.entries[(g - 1) * (order - 1) + (h - 1)];
        }
    }
    c
}

fn cocycle_to_vector(c: &Cocycle) -> FpVector {
    let order = c.order();
    let mut v = FpVector::zero(c.p, (order - 1) * (order - 1));
    for g in 1..order {
        for h in 1..order {
            v.entries[(g - 1) * (order - 1) + (h - 1)] = c.get(g, h);
        }
    }
    v
}

/// Computes `Z²`, `B²`, and `H²` coset representatives by exact linear
/// algebra on the cocycle identity.
pub fn cocycle_space(group: &Arc<FiniteGroup>, p: u64, class_limit: usize) -> Result<CocycleSpace> {
    let order = group.order();
    let dim = (order - 1) * (order - 1);
    let col = |g: usize, h: usize| (g - 1) * (order - 1) + (h - 1);

    // Cocycle identity rows over the free entries (g, h ≠ 1).
    let mut m = FpMatrix::zero(p, 0, dim);
    let mut row = vec![0u64; dim];
    for g in 1..order {
        for h in 1..order {
            for k in 1..order {
                row.iter_mut().for_each(|x| *x = 0);
                let mut add = |g_: usize, h_: usize, sign: bool| {
                    if g_ != 0 && h_ != 0 {
                        let c = col(g_, h_);
                        row[c] = (row[c] + if sign { 1 } else { p - 1 }) % p;
                    }
                };
                add(g, h, true);
                add(group.mul(g, h), k, true);
                add(h, k, false);
                add(g, group.mul(h, k), false);
                if row.iter().any(|&x| x != 0) {
                    m.push_row(&row);
                }
            }
        }
    }
    let solution = solve(&m, &FpVector::zero(p, m.rows))?
        .expect("homogeneous system is consistent");
    let z_vectors = solution.nullspace_basis;

    // Coboundaries δf for indicator 1-cochains.
    let mut b_candidates = Vec::with_capacity(order - 1);
    for g0 in 1..order {
        let f: Vec<u64> = (0..order).map(|g| u64::from(g == g0)).collect();
        let delta = Cocycle::zero(p, order).plus_coboundary(group, &f);
        b_candidates.push(cocycle_to_vector(&delta));
    }
    let b_vectors: Vec<FpVector> = max_independent_subset(&b_candidates)
        .into_iter()
        .map(|i| b_candidates[i].clone())
        .collect();

    // Complete B² to Z² inside the cocycle space; the completion vectors
    // span a transversal of the coboundaries.
    let mut pool = FpMatrix::zero(p, 0, dim);
    for v in &b_vectors {
        pool.push_row(&v.entries);
    }
    let mut rank = pool.rank();
    debug_assert_eq!(rank, b_vectors.len());
    let mut transversal_basis: Vec<FpVector> = Vec::new();
    for v in &z_vectors {
        pool.push_row(&v.entries);
        let new_rank = pool.rank();
        if new_rank > rank {
            rank = new_rank;
            transversal_basis.push(v.clone());
        }
    }
    let h2_dim = transversal_basis.len();
    let class_count = (p as usize).checked_pow(h2_dim as u32).unwrap_or(usize::MAX);
    if class_count > class_limit {
        return Err(Error::OrderLimitExceeded { limit: class_limit });
    }
    let mut representatives = Vec::with_capacity(class_count);
    for counter in 0..class_count {
        let mut acc = FpVector::zero(p, dim);
        let mut rem = counter;
        for basis_vec in &transversal_basis {
            let digit = (rem % p as usize) as u64;
            rem /= p as usize;
            acc = acc.add(&basis_vec.scale(digit));
        }
        representatives.push(vector_to_cocycle(group, p, &acc));
    }
    Ok(CocycleSpace {
        p,
        z_basis: z_vectors.iter().map(|v| vector_to_cocycle(group, p, v)).collect(),
        b_basis: b_vectors.iter().map(|v| vector_to_cocycle(group, p, v)).collect(),
        representatives,
    })
}

/// A p-group presentation of a subgroup of the base group, with generator
/// images expressed in base-group element indices.
#[derive(Debug, Clone)]
pub struct BasePresentation {
    pub presentation: Presentation,
    pub images_in_base: Vec<usize>,
}

/// Cache of Sylow p-subgroup presentations per subgroup of one base group.
/// Presentations depend only on the subgroup, not on the extension, so
/// sweeps share one store across all cocycle classes.
#[derive(Debug)]
pub struct PresentationStore {
    base: Arc<FiniteGroup>,
    p: u64,
    cache: Mutex<HashMap<Vec<usize>, Arc<BasePresentation>>>,
}

impl PresentationStore {
    pub fn new(base: Arc<FiniteGroup>, p: u64) -> Self {
        PresentationStore { base, p, cache: Mutex::new(HashMap::new()) }
    }

    /// Presentation of the Sylow p-subgroup of `subgroup`, with all relator
    /// exponent sums divisible by p.
    pub fn sylow_presentation(&self, subgroup: &SubgroupHandle) -> Result<Arc<BasePresentation>> {
        let (s_group, s_to_base) = self.base.subgroup_as_group(subgroup);
        let sylow = s_group.sylow(self.p)?;
        let sylow_in_base: Vec<usize> =
            sylow.members().iter().map(|&m| s_to_base[m]).collect();
        let key = {
            let mut k = sylow_in_base.clone();
            k.sort_unstable();
            k
        };
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        let handle = self.base.subgroup_closure(&key);
        let (p_group, p_to_base) = self.base.subgroup_as_group(&handle);
        let (presentation, map) = pgroup_presentation(&p_group, self.p)?;
        let images_in_base: Vec<usize> = map.images.iter().map(|&i| p_to_base[i]).collect();
        let entry = Arc::new(BasePresentation { presentation, images_in_base });
        self.cache.lock().unwrap().insert(key, Arc::clone(&entry));
        Ok(entry)
    }
}

/// Per-relator obstructions for one choice of lifts: generator `i` is
/// lifted to `(lift_offsets[i], x̲_i)` and each relator is evaluated in `H`,
/// yielding `ι(a)` for some `a ∈ F_p`.
pub fn relator_obstructions(
    ext: &CentralExtension,
    pres: &BasePresentation,
    lift_offsets: &[u64],
) -> Result<Vec<u64>> {
    let lifts: Vec<usize> = pres
        .images_in_base
        .iter()
        .zip(lift_offsets)
        .map(|(&g, &a)| ext.encode(a, g))
        .collect();
    pres.presentation
        .relators
        .iter()
        .map(|r| {
            let value = r.evaluate(&ext.h, &lifts)?;
            let (a, g) = ext.decode(value);
            if g != FiniteGroup::IDENTITY {
                return Err(Error::InvalidInput(
                    "relator image does not project to the identity".into(),
                ));
            }
            Ok(a)
        })
        .collect()
}

/// How a liftability verdict is certified.
#[derive(Debug, Clone)]
pub enum LiftWitness {
    /// `σ(s)` per member of `S` (in member order), a verified homomorphic
    /// section of `π`.
    Splitting(Vec<usize>),
    /// Index and value of a relator of the Sylow presentation whose lift
    /// evaluates to `ι(a)` with `a ≠ 0`.
    Obstruction { relator_index: usize, value: u64 },
}

/// Liftability of one subgroup, decided by all applicable methods.
#[derive(Debug, Clone)]
pub struct LiftabilityReport {
    pub subgroup: SubgroupHandle,
    pub liftable: bool,
    /// Method (a): relator obstructions on a Sylow p-subgroup presentation.
    pub method_obstruction: bool,
    /// Method (b): coboundary solve on the restricted cocycle.
    pub method_coboundary: bool,
    /// Method (c): brute-force complement search; `None` when `|Sπ⁻¹|`
    /// exceeds the bound and the search is skipped.
    pub method_brute_force: Option<bool>,
    /// Per-relator obstruction values from method (a).
    pub obstructions: Vec<u64>,
    pub witness: LiftWitness,
}

/// Decides whether `S` is liftable to `H`, i.e. whether `Sπ⁻¹` splits over
/// `Im ι`, by three methods that must agree.
pub fn is_liftable(
    ext: &CentralExtension,
    store: &PresentationStore,
    subgroup: &SubgroupHandle,
) -> Result<LiftabilityReport> {
    let p = ext.p;

    // (a) Gaschütz reduction + relator obstructions.
    let pres = store.sylow_presentation(subgroup)?;
    let offsets = vec![0u64; pres.images_in_base.len()];
    let obstructions = relator_obstructions(ext, &pres, &offsets)?;
    let method_obstruction = obstructions.iter().all(|&a| a == 0);

    // (b) Coboundary solve on S: f(g₁) + f(g₂) − f(g₁g₂) = c(g₁, g₂),
    // f(1) = 0, unknowns f(s) for s ≠ 1.
    let members = subgroup.members();
    let position: HashMap<usize, usize> =
        members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let unknowns = members.len() - 1;
    let mut m = FpMatrix::zero(p, 0, unknowns.max(1));
    let mut rhs = Vec::new();
    let mut row = vec![0u64; unknowns.max(1)];
    for &g1 in members {
        for &g2 in members {
            row.iter_mut().for_each(|x| *x = 0);
            let mut add = |g: usize, sign: bool| {
                if g != FiniteGroup::IDENTITY {
                    let c = position[&g] - 1;
                    row[c] = (row[c] + if sign { 1 } else { p - 1 }) % p;
                }
            };
            add(g1, true);
            add(g2, true);
            add(ext.base.mul(g1, g2), false);
            m.push_row(&row);
            rhs.push(ext.cocycle.get(g1, g2));
        }
    }
    let coboundary_solution = solve(&m, &FpVector::from_entries(p, rhs))?;
    let method_coboundary = coboundary_solution.is_some();

    // (c) Brute-force complement search in Sπ⁻¹ when small enough.
    let preimage = ext.preimage(subgroup);
    let method_brute_force = if preimage.order() <= BRUTE_FORCE_BOUND {
        let candidates: Vec<SubgroupHandle> = match ext.all_h_subgroups() {
            Some(all) => all
                .iter()
                .filter(|k| k.members().iter().all(|&x| preimage.contains(x)))
                .cloned()
                .collect(),
            None => {
                let (pre_group, pre_to_h) = ext.h.subgroup_as_group(&preimage);
                pre_group
                    .all_subgroups(BRUTE_FORCE_BOUND)?
                    .into_iter()
                    .map(|k| {
                        ext.h.subgroup_closure(
                            &k.members().iter().map(|&x| pre_to_h[x]).collect::<Vec<_>>(),
                        )
                    })
                    .collect()
            }
        };
        let target_order = subgroup.order();
        Some(candidates.iter().any(|k| {
            k.order() == target_order
                && (1..p).all(|a| !k.contains(ext.iota_element(a)))
        }))
    } else {
        None
    };

    if method_obstruction != method_coboundary
        || method_brute_force.is_some_and(|b| b != method_obstruction)
    {
        return Err(Error::InvalidInput(format!(
            "liftability methods disagree on subgroup of order {}: a={method_obstruction} \
             b={method_coboundary} c={method_brute_force:?}",
            subgroup.order()
        )));
    }
    let liftable = method_obstruction;

    let witness = if liftable {
        let f = coboundary_solution.expect("consistent when liftable").particular;
        let sigma: Vec<usize> = members
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                let f_s = if i == 0 { 0 } else { f.entries[i - 1] };
                ext.encode((p - f_s % p) % p, s)
            })
            .collect();
        // Verify the section is multiplicative and compatible with π.
        for (i, &s1) in members.iter().enumerate() {
            for (j, &s2) in members.iter().enumerate() {
                let product = ext.base.mul(s1, s2);
                let k = position[&product];
                if ext.h.mul(sigma[i], sigma[j]) != sigma[k] {
                    return Err(Error::InvalidInput("splitting witness fails".into()));
                }
            }
            if ext.pi.apply(sigma[i]) != s1 {
                return Err(Error::InvalidInput("splitting witness misprojects".into()));
            }
        }
        LiftWitness::Splitting(sigma)
    } else {
        let relator_index = obstructions
            .iter()
            .position(|&a| a != 0)
            .expect("non-liftable subgroup has a nonzero obstruction");
        LiftWitness::Obstruction { relator_index, value: obstructions[relator_index] }
    };

    Ok(LiftabilityReport {
        subgroup: subgroup.clone(),
        liftable,
        method_obstruction,
        method_coboundary,
        method_brute_force,
        obstructions,
        witness,
    })
}

/// Extracts the normalized cocycle of a concrete central extension given by
/// a surjection `π` with central kernel of prime order `p` generated by
/// `kernel_gen`, using the minimal-index section.
pub fn cocycle_from_section(pi: &GroupHom, p: u64, kernel_gen: usize) -> Result<Cocycle> {
    let h = &pi.source;
    let g = &pi.target;
    if h.element_order(kernel_gen) as u64 != p {
        return Err(Error::InvalidInput("kernel generator does not have order p".into()));
    }
    // Discrete log table of the kernel.
    let mut dlog: HashMap<usize, u64> = HashMap::new();
    let mut z = FiniteGroup::IDENTITY;
    for a in 0..p {
        dlog.insert(z, a);
        z = h.mul(z, kernel_gen);
    }
    let section: Vec<usize> = (0..g.order())
        .map(|q| pi.min_preimage(q).ok_or_else(|| {
            Error::InvalidInput("projection is not surjective".into())
        }))
        .collect::<Result<_>>()?;
    let mut rows = vec![vec![0u64; g.order()]; g.order()];
    for g1 in 0..g.order() {
        for g2 in 0..g.order() {
            let discrepancy =
                h.mul(h.mul(section[g1], section[g2]), h.inv(section[g.mul(g1, g2)]));
            rows[g1][g2] = *dlog.get(&discrepancy).ok_or_else(|| {
                Error::InvalidInput("section discrepancy is not in the kernel".into())
            })?;
        }
    }
    Cocycle::verified(g, p, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Permutation;

    fn klein4() -> Arc<FiniteGroup> {
        let a = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        FiniteGroup::from_permutation_generators(4, &[a, b], 100).unwrap()
    }

    fn c4_cocycle() -> (Arc<FiniteGroup>, Cocycle) {
        // On C₂ with c(g,g) = 1: extension is C₄.
        let c2 = FiniteGroup::cyclic(2);
        let c = Cocycle::verified(&c2, 2, &[vec![0, 0], vec![0, 1]]).unwrap();
        (c2, c)
    }

    #[test]
    fn zero_cocycle_gives_direct_product() {
        let c2 = FiniteGroup::cyclic(2);
        let ext = build_extension(&c2, Cocycle::zero(2, 2)).unwrap();
        assert_eq!(ext.h.order(), 4);
        // Split: every nontrivial element has order 2.
        assert!((1..4).all(|x| ext.h.element_order(x) == 2));
    }

    #[test]
    fn c4_from_cocycle() {
        let (c2, c) = c4_cocycle();
        let ext = build_extension(&c2, c).unwrap();
        assert_eq!(ext.h.order(), 4);
        assert!((0..4).any(|x| ext.h.element_order(x) == 4));
    }

    #[test]
    fn q8_class_over_klein_four() {
        let v4 = klein4();
        let space = cocycle_space(&v4, 2, 4096).unwrap();
        let q8_like: Vec<&Cocycle> = space
            .representatives
            .iter()
            .filter(|c| {
                let ext = build_extension(&v4, (*c).clone()).unwrap();
                let involutions =
                    (1..8).filter(|&x| ext.h.element_order(x) == 2).count();
                involutions == 1
            })
            .collect();
        // Exactly one class of order-8 extensions of V₄ has a unique
        // involution: the quaternion group.
        assert_eq!(q8_like.len(), 1);
    }

    #[test]
    fn bad_cocycles_rejected() {
        let c2 = FiniteGroup::cyclic(2);
        assert!(matches!(
            Cocycle::verified(&c2, 2, &[vec![0, 1], vec![0, 0]]),
            Err(Error::CocycleNotNormalized)
        ));
        let c4 = FiniteGroup::cyclic(4);
        let mut rows = vec![vec![0u64; 4]; 4];
        rows[1][1] = 1; // violates the cocycle identity on C₄
        assert!(matches!(
            Cocycle::verified(&c4, 2, &rows),
            Err(Error::CocycleIdentity(..))
        ));
    }

    #[test]
    fn h2_dimensions() {
        let trivial = FiniteGroup::cyclic(1);
        assert_eq!(cocycle_space(&trivial, 2, 4096).unwrap().representatives.len(), 1);

        let c2 = FiniteGroup::cyclic(2);
        let space = cocycle_space(&c2, 2, 4096).unwrap();
        assert_eq!(space.representatives.len(), 2); // dim H² = 1

        let v4 = klein4();
        let space = cocycle_space(&v4, 2, 4096).unwrap();
        assert_eq!(space.representatives.len(), 8); // dim H² = 3
    }

    #[test]
    fn h2_of_v4_counted_by_extension_types() {
        // Cross-check dim H²(V₄, F₂) = 3 by pairwise-inequivalent extension
        // behavior: classes are distinguished by (involution count) alone
        // only partially, so count distinct cocycle tables instead.
        let v4 = klein4();
        let space = cocycle_space(&v4, 2, 4096).unwrap();
        let mut tables: Vec<Vec<Vec<u64>>> =
            space.representatives.iter().map(|c| c.rows()).collect();
        tables.dedup();
        assert_eq!(tables.len(), 8);
    }

    #[test]
    fn zero_cocycle_everything_liftable() {
        let v4 = klein4();
        let ext = build_extension(&v4, Cocycle::zero(2, 4)).unwrap();
        let store = PresentationStore::new(v4.clone(), 2);
        for s in v4.all_subgroups(48).unwrap() {
            let report = is_liftable(&ext, &store, &s).unwrap();
            assert!(report.liftable);
            match report.witness {
                LiftWitness::Splitting(sigma) => {
                    // σ(g) = (0, g) for the zero cocycle.
                    for (i, &g) in s.members().iter().enumerate() {
                        assert_eq!(sigma[i], ext.encode(0, g));
                    }
                }
                _ => panic!("expected a splitting witness"),
            }
        }
    }

    #[test]
    fn c2_not_liftable_in_c4() {
        let (c2, c) = c4_cocycle();
        let ext = build_extension(&c2, c).unwrap();
        let store = PresentationStore::new(c2.clone(), 2);
        let report = is_liftable(&ext, &store, &c2.full_subgroup()).unwrap();
        assert!(!report.liftable);
        assert_eq!(report.method_brute_force, Some(false));
        assert_eq!(report.obstructions, vec![1]);
        match report.witness {
            LiftWitness::Obstruction { value, .. } => assert_eq!(value, 1),
            _ => panic!("expected an obstruction witness"),
        }
    }

    #[test]
    fn obstruction_is_lift_independent() {
        let (c2, c) = c4_cocycle();
        let ext = build_extension(&c2, c).unwrap();
        let store = PresentationStore::new(c2.clone(), 2);
        let pres = store.sylow_presentation(&c2.full_subgroup()).unwrap();
        let base = relator_obstructions(&ext, &pres, &[0]).unwrap();
        let shifted = relator_obstructions(&ext, &pres, &[1]).unwrap();
        assert_eq!(base, shifted);
    }

    #[test]
    fn coboundary_shift_preserves_verdicts() {
        let v4 = klein4();
        let space = cocycle_space(&v4, 2, 4096).unwrap();
        let store = PresentationStore::new(v4.clone(), 2);
        let f = [0u64, 1, 1, 0];
        for c in &space.representatives {
            let shifted = c.plus_coboundary(&v4, &f);
            let ext = build_extension(&v4, c.clone()).unwrap();
            let ext_shifted = build_extension(&v4, shifted).unwrap();
            for s in v4.all_subgroups(48).unwrap() {
                assert_eq!(
                    is_liftable(&ext, &store, &s).unwrap().liftable,
                    is_liftable(&ext_shifted, &store, &s).unwrap().liftable
                );
            }
        }
    }

    #[test]
    fn conjugation_invariance_of_liftability() {
        let s3 = {
            let a = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
            let b = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
            FiniteGroup::from_permutation_generators(3, &[a, b], 100).unwrap()
        };
        let space = cocycle_space(&s3, 2, 4096).unwrap();
        let store = PresentationStore::new(s3.clone(), 2);
        for c in &space.representatives {
            let ext = build_extension(&s3, c.clone()).unwrap();
            for s in s3.all_subgroups(48).unwrap() {
                let verdict = is_liftable(&ext, &store, &s).unwrap().liftable;
                for g in 0..s3.order() {
                    let conj = s.conjugate(&s3, g);
                    assert_eq!(is_liftable(&ext, &store, &conj).unwrap().liftable, verdict);
                }
            }
        }
    }

    #[test]
    fn extracted_cocycle_reproduces_c4() {
        let c4 = FiniteGroup::cyclic(4);
        let n = c4.subgroup_closure(&[2]);
        let (_, proj) = c4.quotient(&n).unwrap();
        let c = cocycle_from_section(&proj, 2, 2).unwrap();
        let c2_base = proj.target.clone();
        let ext = build_extension(&c2_base, c).unwrap();
        assert!((0..4).any(|x| ext.h.element_order(x) == 4));
    }
}
