//! Subextension existence for a central extension `H` of `G` against a
//! permutation module `V = F_p^Ω`: finds an embedding `β: H → G ⋉ V` over
//! the canonical identifications, evaluates the necessary condition (every
//! orbit-representative stabilizer liftable), and sweeps small groups for
//! violations of the implication `subextension ⟹ condition`.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::extensions::{
    cocycle_space, build_extension, is_liftable, relator_obstructions, CentralExtension,
    PresentationStore,
};
use crate::groups::{FiniteGroup, SubgroupHandle};
use crate::linalg::{solve, FpMatrix, FpVector};
use crate::permmod::{
    act, alpha, decompose, evaluate_via_fox, evaluate_word, omega0, ActionSpec, ModuleElement,
    SemidirectElement,
};
use crate::{Error, Result};

/// A small generating sequence chosen greedily in canonical element order.
pub fn generating_set(group: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = group.subgroup_closure(&gens);
    for g in 1..group.order() {
        if span.order() == group.order() {
            break;
        }
        if !span.contains(g) {
            gens.push(g);
            span = group.subgroup_closure(&gens);
        }
    }
    gens
}

/// A witness that `H` is a subextension of `G ⋉ V`: the 1-cochain
/// `f: G → V` with `f(1) = 0` satisfying
/// `f(g₁g₂) = f(g₁)·g₂ + f(g₂) − c(g₁,g₂)·ω₀`, inducing the embedding
/// `β(a, g) = (g, a·ω₀ + f(g))`.
#[derive(Debug, Clone)]
pub struct EmbeddingWitness {
    pub f: Vec<ModuleElement>,
}

impl EmbeddingWitness {
    /// `β` applied to an element of `H`.
    pub fn beta(&self, ext: &CentralExtension, act_spec: &ActionSpec, h: usize) -> SemidirectElement {
        let (a, g) = ext.decode(h);
        let v = alpha(ext.p, act_spec.degree, a)
            .expect("degree checked at construction")
            .add(&self.f[g]);
        SemidirectElement::new(g, v)
    }

    /// Full defensive verification: the witness equation on every pair of
    /// base elements, β a homomorphism (all pairs for `|H| ≤ 128`, a
    /// deterministic sample above), β injective, `β∘ι = α`, and the
    /// `G`-component of `β` equal to `π`.
    pub fn verify(&self, ext: &CentralExtension, act_spec: &ActionSpec) -> Result<()> {
        let g_order = ext.base.order();
        let p = ext.p;
        let degree = act_spec.degree;
        if self.f.len() != g_order || self.f.iter().any(|v| v.dim() != degree || v.p != p) {
            return Err(Error::DimensionMismatch("witness table shape".into()));
        }
        if !self.f[FiniteGroup::IDENTITY].is_zero() {
            return Err(Error::InvalidInput("witness has f(1) != 0".into()));
        }
        let w0 = omega0(p, degree)?;
        for g1 in 0..g_order {
            for g2 in 0..g_order {
                let lhs = &self.f[ext.base.mul(g1, g2)];
                let rhs = act(&self.f[g1], act_spec, g2)
                    .add(&self.f[g2])
                    .sub(&w0.scale(ext.cocycle.get(g1, g2)));
                if *lhs != rhs {
                    return Err(Error::InvalidInput(format!(
                        "witness equation fails at ({g1}, {g2})"
                    )));
                }
            }
        }
        let h_order = ext.h.order();
        let images: Vec<SemidirectElement> =
            (0..h_order).map(|h| self.beta(ext, act_spec, h)).collect();
        let step = if h_order <= 128 { 1 } else { h_order / 96 + 1 };
        for h1 in (0..h_order).step_by(step) {
            for h2 in (0..h_order).step_by(if h_order <= 128 { 1 } else { 7 }) {
                let lhs = &images[ext.h.mul(h1, h2)];
                let rhs = crate::permmod::sd_mul(act_spec, &images[h1], &images[h2])?;
                if *lhs != rhs {
                    return Err(Error::InvalidInput(format!(
                        "beta is not a homomorphism at ({h1}, {h2})"
                    )));
                }
            }
        }
        let mut seen = std::collections::HashSet::with_capacity(h_order);
        for img in &images {
            if !seen.insert((img.g, img.v.entries.clone())) {
                return Err(Error::InvalidInput("beta is not injective".into()));
            }
        }
        for a in 0..p {
            let lhs = &images[ext.iota_element(a)];
            if lhs.g != FiniteGroup::IDENTITY || lhs.v != alpha(p, degree, a)? {
                return Err(Error::InvalidInput("beta does not extend alpha".into()));
            }
        }
        for h in 0..h_order {
            if images[h].g != ext.pi.apply(h) {
                return Err(Error::InvalidInput("beta is incompatible with pi".into()));
            }
        }
        Ok(())
    }
}

/// `f(g)` as an affine function of the unknown generator images: one
/// coefficient row per module coordinate plus a constant vector.
#[derive(Clone)]
struct AffineChain {
    rows: Vec<FpVector>,
    constant: FpVector,
}

impl AffineChain {
    fn zero(p: u64, degree: usize, unknowns: usize) -> Self {
        AffineChain {
            rows: vec![FpVector::zero(p, unknowns); degree],
            constant: FpVector::zero(p, degree),
        }
    }

    fn evaluate(&self, u: &FpVector) -> ModuleElement {
        let p = self.constant.p;
        let entries = self
            .rows
            .iter()
            .zip(&self.constant.entries)
            .map(|(row, &c)| {
                let dot: u64 = row
                    .entries
                    .iter()
                    .zip(&u.entries)
                    .map(|(&a, &b)| a * b % p)
                    .sum::<u64>();
                (dot + c) % p
            })
            .collect();
        FpVector::from_entries(p, entries)
    }
}

/// Decides whether `H` embeds as a subextension of `G ⋉ V` for the given
/// action, returning a fully verified witness or `None`.
///
/// The witness equation is imposed only for pairs `(g, s)` with `s` in a
/// generating set; the cocycle identity forces the remaining pairs, which
/// the final verification confirms independently.
pub fn subextension_exists(
    ext: &CentralExtension,
    act_spec: &ActionSpec,
) -> Result<Option<EmbeddingWitness>> {
    if !Arc::ptr_eq(&ext.base, &act_spec.group)
        && !ext.base.same_multiplication(&act_spec.group)
    {
        return Err(Error::AmbientMismatch(
            "extension base and action group differ".into(),
        ));
    }
    let p = ext.p;
    let degree = act_spec.degree;
    let order = ext.base.order();
    let gens = generating_set(&ext.base);
    let unknowns = (gens.len() * degree).max(1);
    let w0 = omega0(p, degree)?;

    // Propagate f along a breadth-first tree; non-tree edges yield
    // consistency rows.
    let mut chains: Vec<Option<AffineChain>> = vec![None; order];
    chains[FiniteGroup::IDENTITY] = Some(AffineChain::zero(p, degree, unknowns));
    let mut system = FpMatrix::zero(p, 0, unknowns);
    let mut rhs: Vec<u64> = Vec::new();
    let mut queue = std::collections::VecDeque::from([FiniteGroup::IDENTITY]);
    while let Some(g) = queue.pop_front() {
        let chain_g = chains[g].clone().expect("queued elements have chains");
        for (j, &s) in gens.iter().enumerate() {
            let target = ext.base.mul(g, s);
            let perm = act_spec.permutation(s);
            // f(gs) = f(g)·s + f(s) − c(g, s)·ω₀, with f(s) the j-th
            // unknown block.
            let mut prop = AffineChain::zero(p, degree, unknowns);
            for i in 0..degree {
                let dest = perm.apply(i);
                prop.rows[dest] = chain_g.rows[i].clone();
                prop.constant.entries[dest] = chain_g.constant.entries[i];
            }
            for i in 0..degree {
                let col = j * degree + i;
                prop.rows[i].entries[col] = (prop.rows[i].entries[col] + 1) % p;
            }
            let c = ext.cocycle.get(g, s);
            prop.constant = prop.constant.sub(&w0.scale(c));
            match &chains[target] {
                None => {
                    chains[target] = Some(prop);
                    queue.push_back(target);
                }
                Some(existing) => {
                    for i in 0..degree {
                        let row = existing.rows[i].sub(&prop.rows[i]);
                        if !row.is_zero()
                            || existing.constant.entries[i] != prop.constant.entries[i]
                        {
                            system.push_row(&row.entries);
                            rhs.push(
                                (prop.constant.entries[i] + p
                                    - existing.constant.entries[i])
                                    % p,
                            );
                        }
                    }
                }
            }
        }
    }
    let Some(solution) = solve(&system, &FpVector::from_entries(p, rhs))? else {
        return Ok(None);
    };
    let u = solution.particular;
    let f: Vec<ModuleElement> = chains
        .into_iter()
        .map(|c| c.expect("generating set reaches every element").evaluate(&u))
        .collect();
    let witness = EmbeddingWitness { f };
    witness.verify(ext, act_spec)?;
    Ok(Some(witness))
}

/// Liftability of one orbit's representative stabilizer.
#[derive(Debug, Clone)]
pub struct OrbitCondition {
    pub representative: usize,
    pub orbit_size: usize,
    pub stabilizer: SubgroupHandle,
    pub liftable: bool,
}

/// The necessary condition evaluated orbit by orbit.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub holds: bool,
    pub orbits: Vec<OrbitCondition>,
}

/// Evaluates the necessary condition: the stabilizer of one representative
/// per orbit (the minimal point) must be liftable to `H`.
pub fn necessary_condition(
    ext: &CentralExtension,
    store: &PresentationStore,
    act_spec: &ActionSpec,
) -> Result<ConditionReport> {
    if !Arc::ptr_eq(&ext.base, &act_spec.group)
        && !ext.base.same_multiplication(&act_spec.group)
    {
        return Err(Error::AmbientMismatch(
            "extension base and action group differ".into(),
        ));
    }
    let mut orbits = Vec::new();
    for orbit in act_spec.orbits() {
        let representative = orbit[0];
        let stabilizer = act_spec.stabilizer(representative)?;
        let report = is_liftable(ext, store, &stabilizer)?;
        orbits.push(OrbitCondition {
            representative,
            orbit_size: orbit.len(),
            stabilizer,
            liftable: report.liftable,
        });
    }
    Ok(ConditionReport { holds: orbits.iter().all(|o| o.liftable), orbits })
}

/// Per-relator record comparing the ι-obstruction against the
/// ω-coefficient of the relator's evaluation through a witness.
#[derive(Debug, Clone, Serialize)]
pub struct RelatorComparison {
    pub relator_index: usize,
    /// `a` with `r(x̄) = ι(a)` in `H`, from the minimal lifts.
    pub obstruction: u64,
    /// ω-coefficient of the `V`-part of the literal word evaluation.
    pub omega_coefficient: u64,
    /// Same coefficient via the Fox-derivative evaluation route.
    pub fox_omega_coefficient: u64,
    /// `Σ_i f(x̲_i)[ω]·μ_{x_i}(r) mod p`, the exponent-sum prediction.
    pub predicted: u64,
}

/// Runs the theorem's contradiction engine forward for a subgroup `P`
/// stabilizing `ω`: with a valid witness every relator of the p-group
/// presentation of `P` must show obstruction 0 and ω-coefficient 0.
pub fn relator_obstruction_eval(
    ext: &CentralExtension,
    store: &PresentationStore,
    act_spec: &ActionSpec,
    point: usize,
    subgroup: &SubgroupHandle,
    witness: &EmbeddingWitness,
) -> Result<Vec<RelatorComparison>> {
    if point >= act_spec.degree {
        return Err(Error::PointOutOfRange { point, degree: act_spec.degree });
    }
    if subgroup.members().iter().any(|&g| act_spec.apply(g, point) != point) {
        return Err(Error::InvalidInput("subgroup does not stabilize the point".into()));
    }
    witness.verify(ext, act_spec)?;
    let pres = store.sylow_presentation(subgroup)?;
    let offsets = vec![0u64; pres.images_in_base.len()];
    let obstructions = relator_obstructions(ext, &pres, &offsets)?;
    let assignments: Vec<SemidirectElement> = pres
        .images_in_base
        .iter()
        .map(|&g| witness.beta(ext, act_spec, ext.min_lift(g)))
        .collect();
    let mut out = Vec::with_capacity(pres.presentation.relators.len());
    for (relator_index, r) in pres.presentation.relators.iter().enumerate() {
        let (literal, via_fox) = if assignments.is_empty() {
            let id = SemidirectElement::identity(ext.p, act_spec.degree);
            (id.clone(), id)
        } else {
            (
                evaluate_word(act_spec, r, &assignments)?,
                evaluate_via_fox(act_spec, r, &assignments)?,
            )
        };
        if literal != via_fox || literal.g != FiniteGroup::IDENTITY {
            return Err(Error::InvalidInput(
                "relator evaluation routes disagree or miss the identity".into(),
            ));
        }
        let (omega_coefficient, _) = decompose(&literal.v, point)?;
        let (fox_omega_coefficient, _) = decompose(&via_fox.v, point)?;
        let predicted = pres
            .images_in_base
            .iter()
            .enumerate()
            .map(|(i, &g)| {
                let a_i = witness.f[g].entries[point];
                let mu = r.exponent_sum(i).rem_euclid(ext.p as i64) as u64;
                a_i * mu % ext.p
            })
            .sum::<u64>()
            % ext.p;
        out.push(RelatorComparison {
            relator_index,
            obstruction: obstructions[relator_index],
            omega_coefficient,
            fox_omega_coefficient,
            predicted,
        });
    }
    Ok(out)
}

/// One sweep case: a single (group, extension class, transitive action)
/// triple with the implication verdict.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub group: String,
    pub order: usize,
    pub p: u64,
    pub h2_class: usize,
    pub action_degree: usize,
    pub stabilizer_orders: Vec<usize>,
    pub liftable_per_orbit: Vec<bool>,
    pub subextension_exists: bool,
    /// The necessary condition itself; the converse direction (condition
    /// without a subextension) is observational only.
    pub condition_holds: bool,
    pub implication_holds: bool,
    pub elapsed_ms: u64,
}

/// Sweep configuration; bounds beyond which cases are skipped and logged.
#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub class_limit: usize,
    pub max_group_order: usize,
    pub subgroup_bound: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { class_limit: 4096, max_group_order: 64, subgroup_bound: 64 }
    }
}

/// Sweep results plus a log line per skipped case.
#[derive(Debug)]
pub struct SweepOutcome {
    pub reports: Vec<TheoremReport>,
    pub skipped: Vec<String>,
}

/// The transitive actions of `G` up to conjugacy: coset actions on one
/// subgroup per conjugacy class, canonical representative first.
pub fn transitive_actions(group: &Arc<FiniteGroup>, bound: usize) -> Result<Vec<ActionSpec>> {
    let all = group.all_subgroups(bound)?;
    let mut seen: Vec<SubgroupHandle> = Vec::new();
    let mut actions = Vec::new();
    for s in &all {
        let canonical = (0..group.order())
            .map(|g| s.conjugate(group, g))
            .min_by(|a, b| a.members().cmp(b.members()))
            .expect("group is nonempty");
        if seen.contains(&canonical) {
            continue;
        }
        seen.push(canonical.clone());
        let hom = group.coset_action(&canonical)?;
        let name = format!("cosets of order-{} subgroup #{}", canonical.order(), seen.len());
        actions.push(ActionSpec::from_hom(&hom, name)?);
    }
    Ok(actions)
}

/// Verifies the main theorem's implication across every (H² class,
/// transitive action) pair for each listed group, in parallel, with
/// deterministic case ordering in the output.
pub fn theorem_sweep(
    groups: &[(String, Arc<FiniteGroup>)],
    p: u64,
    options: &SweepOptions,
) -> Result<SweepOutcome> {
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for (name, group) in groups {
        if group.order() > options.max_group_order {
            skipped.push(format!(
                "{name}: order {} exceeds bound {}",
                group.order(),
                options.max_group_order
            ));
            continue;
        }
        let space = match cocycle_space(group, p, options.class_limit) {
            Ok(space) => space,
            Err(Error::OrderLimitExceeded { limit }) => {
                skipped.push(format!("{name}: H2 class count exceeds bound {limit}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let actions = transitive_actions(group, options.subgroup_bound)?;
        let store = PresentationStore::new(Arc::clone(group), p);
        let class_reports: Vec<Result<Vec<TheoremReport>>> = space
            .representatives
            .par_iter()
            .enumerate()
            .map(|(h2_class, cocycle)| {
                let started = Instant::now();
                let ext = build_extension(group, cocycle.clone())?;
                let mut lift_cache: HashMap<Vec<usize>, bool> = HashMap::new();
                let mut out = Vec::with_capacity(actions.len());
                for action in &actions {
                    let case_start = Instant::now();
                    let mut stabilizer_orders = Vec::new();
                    let mut liftable_per_orbit = Vec::new();
                    let mut condition_holds = true;
                    for orbit in action.orbits() {
                        let stab = action.stabilizer(orbit[0])?;
                        let key = stab.members().to_vec();
                        let liftable = match lift_cache.get(&key) {
                            Some(&hit) => hit,
                            None => {
                                let verdict = is_liftable(&ext, &store, &stab)?.liftable;
                                lift_cache.insert(key, verdict);
                                verdict
                            }
                        };
                        stabilizer_orders.push(stab.order());
                        liftable_per_orbit.push(liftable);
                        condition_holds &= liftable;
                    }
                    let witness = subextension_exists(&ext, action)?;
                    let subextension = witness.is_some();
                    out.push(TheoremReport {
                        group: group_label(&ext, h2_class),
                        order: group.order(),
                        p,
                        h2_class,
                        action_degree: action.degree,
                        stabilizer_orders,
                        liftable_per_orbit,
                        subextension_exists: subextension,
                        condition_holds,
                        implication_holds: !subextension || condition_holds,
                        elapsed_ms: case_start.elapsed().as_millis() as u64,
                    });
                }
                let _ = started;
                Ok(out)
            })
            .collect();
        for class in class_reports {
            let mut class = class?;
            for report in &mut class {
                report.group = name.clone();
            }
            reports.extend(class);
        }
    }
    Ok(SweepOutcome { reports, skipped })
}

fn group_label(ext: &CentralExtension, h2_class: usize) -> String {
    format!("order-{} base, class {h2_class}", ext.base.order())
}
