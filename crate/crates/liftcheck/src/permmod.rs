//! The permutation module `V = F_p^Ω` with right `G`-action, the invariant
//! vector `ω₀`, the semidirect product `G ⋉ V`, and two routes for
//! evaluating free-group words in it: the literal product and the Fox
//! derivative formula. Both routes must agree exactly.

use std::sync::Arc;

use crate::groups::{FiniteGroup, GroupHom, Permutation, SubgroupHandle};
use crate::linalg::FpVector;
use crate::words::Word;
use crate::{Error, Result};

/// An element of `V = F_p^Ω`.
pub type ModuleElement = FpVector;

/// A permutation representation `ρ: G → Sym(Ω)`, possibly unfaithful or
/// intransitive, with one permutation per group element.
#[derive(Debug, Clone)]
pub struct ActionSpec {
    pub group: Arc<FiniteGroup>,
    pub degree: usize,
    perms: Vec<Permutation>,
    pub name: String,
}

impl ActionSpec {
    /// The natural action of a group already realized by permutations.
    pub fn natural(group: Arc<FiniteGroup>, name: impl Into<String>) -> Result<Self> {
        let degree = group
            .degree()
            .ok_or_else(|| Error::InvalidInput("group has no permutation realization".into()))?;
        let perms = group
            .permutations()
            .expect("degree implies a permutation realization")
            .to_vec();
        Ok(ActionSpec { group, degree, perms, name: name.into() })
    }

    /// The action induced by a homomorphism into a permutation group.
    pub fn from_hom(hom: &GroupHom, name: impl Into<String>) -> Result<Self> {
        let degree = hom
            .target
            .degree()
            .ok_or_else(|| Error::InvalidInput("hom target has no permutation realization".into()))?;
        let perms = (0..hom.source.order())
            .map(|g| hom.target.permutation(hom.apply(g)).unwrap().clone())
            .collect();
        Ok(ActionSpec { group: hom.source.clone(), degree, perms, name: name.into() })
    }

    pub fn permutation(&self, g: usize) -> &Permutation {
        &self.perms[g]
    }

    pub fn apply(&self, g: usize, point: usize) -> usize {
        self.perms[g].apply(point)
    }

    /// Stabilizer of a point under this action (includes the kernel).
    pub fn stabilizer(&self, point: usize) -> Result<SubgroupHandle> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange { point, degree: self.degree });
        }
        let members: Vec<usize> = (0..self.group.order())
            .filter(|&g| self.perms[g].apply(point) == point)
            .collect();
        Ok(self.group.subgroup_closure(&members))
    }

    /// Orbits of Ω under the action, ordered by minimal point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit: Vec<usize> = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(point) = stack.pop() {
                orbit.push(point);
                for p in &self.perms {
                    let image = p.apply(point);
                    if !seen[image] {
                        seen[image] = true;
                        stack.push(image);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }
}

/// `v·g`: coordinates permuted by `ρ(g)` as a right action, so that
/// `act(act(v, g), h) = act(v, gh)`.
pub fn act(v: &ModuleElement, action: &ActionSpec, g: usize) -> ModuleElement {
    act_by_perm(v, action.permutation(g))
}

pub fn act_by_perm(v: &ModuleElement, perm: &Permutation) -> ModuleElement {
    debug_assert_eq!(v.dim(), perm.degree());
    let mut out = FpVector::zero(v.p, v.dim());
    for (i, &c) in v.entries.iter().enumerate() {
        out.entries[perm.apply(i)] = c;
    }
    out
}

/// The G-invariant all-ones vector `ω₀ = Σ_ω ω`.
pub fn omega0(p: u64, degree: usize) -> Result<ModuleElement> {
    if degree == 0 {
        return Err(Error::InvalidInput("degree 0 module has no ω₀".into()));
    }
    Ok(FpVector::from_entries(p, vec![1; degree]))
}

/// `α(a) = a·ω₀`, the embedding of `A = F_p` onto the submodule `I`.
pub fn alpha(p: u64, degree: usize, a: u64) -> Result<ModuleElement> {
    Ok(omega0(p, degree)?.scale(a))
}

/// Splits `v = coeff·ω + remainder` with the remainder supported on `Ω∖ω`.
pub fn decompose(v: &ModuleElement, point: usize) -> Result<(u64, ModuleElement)> {
    if point >= v.dim() {
        return Err(Error::PointOutOfRange { point, degree: v.dim() });
    }
    let coeff = v.entries[point];
    let mut remainder = v.clone();
    remainder.entries[point] = 0;
    Ok((coeff, remainder))
}

/// An element `(g, v)` of `G ⋉ V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectElement {
    pub g: usize,
    pub v: ModuleElement,
}

impl SemidirectElement {
    pub fn new(g: usize, v: ModuleElement) -> Self {
        SemidirectElement { g, v }
    }

    pub fn identity(p: u64, degree: usize) -> Self {
        SemidirectElement { g: FiniteGroup::IDENTITY, v: FpVector::zero(p, degree) }
    }
}

/// `(g₁, v₁)(g₂, v₂) = (g₁g₂, v₁·g₂ + v₂)`.
pub fn sd_mul(
    action: &ActionSpec,
    x: &SemidirectElement,
    y: &SemidirectElement,
) -> Result<SemidirectElement> {
    if x.v.dim() != action.degree || y.v.dim() != action.degree || x.v.p != y.v.p {
        return Err(Error::AmbientMismatch(format!(
            "semidirect factors of dims {}/{} mod {}/{} in degree-{} action",
            x.v.dim(),
            y.v.dim(),
            x.v.p,
            y.v.p,
            action.degree
        )));
    }
    Ok(SemidirectElement { g: action.group.mul(x.g, y.g), v: act(&x.v, action, y.g).add(&y.v) })
}

/// `(g, v)⁻¹ = (g⁻¹, −v·g⁻¹)`.
pub fn sd_inv(action: &ActionSpec, x: &SemidirectElement) -> SemidirectElement {
    let g_inv = action.group.inv(x.g);
    SemidirectElement { g: g_inv, v: act(&x.v, action, g_inv).neg() }
}

/// Evaluates a word as a literal `sd_mul` product of the assigned images.
pub fn evaluate_word(
    action: &ActionSpec,
    word: &Word,
    assignments: &[SemidirectElement],
) -> Result<SemidirectElement> {
    let p = assignments
        .first()
        .map(|x| x.v.p)
        .ok_or_else(|| Error::InvalidInput("no assignments given".into()))?;
    let mut acc = SemidirectElement::identity(p, action.degree);
    for l in word.letters() {
        let image = assignments
            .get(l.generator)
            .ok_or(Error::MissingImage(l.generator))?;
        let factor = if l.sign == 1 { image.clone() } else { sd_inv(action, image) };
        acc = sd_mul(action, &acc, &factor)?;
    }
    Ok(acc)
}

/// Evaluates a word through the Fox derivative identity: the `G`-part is
/// `w(g₁,…,g_n)` and the `V`-part is `Σ_i v_i·(∂w/∂g_i)`, the group-ring
/// elements acting linearly. Must agree exactly with [`evaluate_word`].
pub fn evaluate_via_fox(
    action: &ActionSpec,
    word: &Word,
    assignments: &[SemidirectElement],
) -> Result<SemidirectElement> {
    let p = assignments
        .first()
        .map(|x| x.v.p)
        .ok_or_else(|| Error::InvalidInput("no assignments given".into()))?;
    let g_images: Vec<usize> = assignments.iter().map(|x| x.g).collect();
    let g_part = word.evaluate(&action.group, &g_images)?;
    let mut v_part = FpVector::zero(p, action.degree);
    for (i, assignment) in assignments.iter().enumerate() {
        let derivative = word.fox_derivative(i).specialize(&action.group, &g_images)?;
        for (&g, coeff) in derivative.terms() {
            let scalar = coeff.rem_euclid(p as i64) as u64;
            v_part = v_part.add(&act(&assignment.v, action, g).scale(scalar));
        }
    }
    Ok(SemidirectElement { g: g_part, v: v_part })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Permutation;
    use proptest::prelude::*;

    fn sym3_action() -> ActionSpec {
        let a = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let g = FiniteGroup::from_permutation_generators(3, &[a, b], 100).unwrap();
        ActionSpec::natural(g, "sym3").unwrap()
    }

    fn v(p: u64, e: &[u64]) -> ModuleElement {
        FpVector::from_entries(p, e.to_vec())
    }

    #[test]
    fn act_identity_and_basis() {
        let action = sym3_action();
        let x = v(2, &[1, 0, 1]);
        assert_eq!(act(&x, &action, 0), x);
        // Basis vector at ω moves to the basis vector at ω·g.
        for g in 0..action.group.order() {
            for point in 0..3 {
                let e = FpVector::unit(2, 3, point);
                assert_eq!(act(&e, &action, g), FpVector::unit(2, 3, action.apply(g, point)));
            }
        }
    }

    #[test]
    fn omega0_is_invariant() {
        let action = sym3_action();
        let w0 = omega0(2, 3).unwrap();
        for g in 0..action.group.order() {
            assert_eq!(act(&w0, &action, g), w0);
        }
    }

    #[test]
    fn act_is_a_right_action() {
        let action = sym3_action();
        let x = v(3, &[1, 2, 0]);
        for g in 0..action.group.order() {
            for h in 0..action.group.order() {
                assert_eq!(
                    act(&act(&x, &action, g), &action, h),
                    act(&x, &action, action.group.mul(g, h))
                );
            }
        }
    }

    #[test]
    fn alpha_is_linear_and_injective() {
        assert!(alpha(2, 4, 0).unwrap().is_zero());
        assert_eq!(alpha(2, 4, 1).unwrap(), v(2, &[1, 1, 1, 1]));
        for a in 0..5u64 {
            for b in 0..5u64 {
                assert_eq!(
                    alpha(5, 3, a + b).unwrap(),
                    alpha(5, 3, a).unwrap().add(&alpha(5, 3, b).unwrap())
                );
            }
        }
        assert!(omega0(2, 0).is_err());
    }

    #[test]
    fn sd_mul_module_part() {
        let action = sym3_action();
        let a = SemidirectElement::new(0, v(2, &[1, 0, 0]));
        let b = SemidirectElement::new(0, v(2, &[0, 1, 0]));
        let product = sd_mul(&action, &a, &b).unwrap();
        assert_eq!(product, SemidirectElement::new(0, v(2, &[1, 1, 0])));
    }

    #[test]
    fn sd_conjugation_is_module_action() {
        let action = sym3_action();
        for g in 0..action.group.order() {
            let x = SemidirectElement::new(g, FpVector::zero(2, 3));
            let m = SemidirectElement::new(0, v(2, &[1, 1, 0]));
            let conj = sd_mul(&action, &sd_mul(&action, &x, &m).unwrap(), &sd_inv(&action, &x))
                .unwrap();
            assert_eq!(conj.g, 0);
            assert_eq!(conj.v, act(&m.v, &action, action.group.inv(g)));
        }
    }

    #[test]
    fn sd_inverse_cancels() {
        let action = sym3_action();
        let x = SemidirectElement::new(3, v(2, &[1, 0, 1]));
        let e = sd_mul(&action, &x, &sd_inv(&action, &x)).unwrap();
        assert_eq!(e, SemidirectElement::identity(2, 3));
    }

    #[test]
    fn decompose_examples() {
        let w0 = omega0(2, 3).unwrap();
        let (c, rest) = decompose(&w0, 1).unwrap();
        assert_eq!(c, 1);
        assert_eq!(rest, v(2, &[1, 0, 1]));
        let (c0, rest0) = decompose(&FpVector::zero(2, 3), 0).unwrap();
        assert_eq!((c0, rest0.is_zero()), (0, true));
        let (ca, _) = decompose(&alpha(5, 3, 3).unwrap(), 2).unwrap();
        assert_eq!(ca, 3);
        assert!(decompose(&w0, 5).is_err());
    }

    #[test]
    fn fox_route_on_squares() {
        let action = sym3_action();
        let word: Word = "x0^2".parse().unwrap();
        for g in 0..action.group.order() {
            let assignment = vec![SemidirectElement::new(g, v(2, &[1, 0, 1]))];
            let direct = evaluate_word(&action, &word, &assignment).unwrap();
            let via_fox = evaluate_via_fox(&action, &word, &assignment).unwrap();
            assert_eq!(direct, via_fox);
            // (g, v)² = (g², v·g + v) matching ∂x²/∂x = x + 1.
            assert_eq!(direct.g, action.group.mul(g, g));
            assert_eq!(direct.v, act(&assignment[0].v, &action, g).add(&assignment[0].v));
        }
    }

    #[test]
    fn fox_route_with_zero_module_parts() {
        let action = sym3_action();
        let word: Word = "x0^1 x1^-1 x0^-1 x1^1".parse().unwrap();
        let assignment = vec![
            SemidirectElement::new(1, FpVector::zero(2, 3)),
            SemidirectElement::new(2, FpVector::zero(2, 3)),
        ];
        let result = evaluate_via_fox(&action, &word, &assignment).unwrap();
        assert!(result.v.is_zero());
        assert_eq!(result.g, word.evaluate(&action.group, &[1, 2]).unwrap());
    }

    prop_compose! {
        fn arb_word(max_len: usize, alphabet: usize)
            (letters in proptest::collection::vec(
                (0..alphabet, prop_oneof![Just(1i8), Just(-1i8)]), 0..=max_len))
            -> Word
        {
            Word::from_letters(
                letters.into_iter().map(|(g, s)| crate::words::Letter::new(g, s)).collect())
        }
    }

    proptest! {
        #[test]
        fn word_and_fox_evaluations_agree(
            word in arb_word(10, 2),
            gs in proptest::collection::vec(0usize..6, 2),
            vs in proptest::collection::vec(proptest::collection::vec(0u64..2, 3), 2),
        ) {
            let action = sym3_action();
            let assignments: Vec<SemidirectElement> = gs.iter().zip(vs)
                .map(|(&g, coeffs)| SemidirectElement::new(g, v(2, &coeffs)))
                .collect();
            prop_assert_eq!(
                evaluate_word(&action, &word, &assignments).unwrap(),
                evaluate_via_fox(&action, &word, &assignments).unwrap()
            );
        }

        #[test]
        fn stabilized_point_coefficient_tracks_exponent_sums(
            word in arb_word(10, 2),
            picks in proptest::collection::vec(0usize..2, 2),
            vs in proptest::collection::vec(proptest::collection::vec(0u64..2, 3), 2),
        ) {
            // With every g-part stabilizing ω, the ω-coefficient of the
            // evaluation depends only on exponent sums and the ω-coefficients
            // of the inputs.
            let action = sym3_action();
            let omega = 2usize;
            let stab: Vec<usize> = (0..action.group.order())
                .filter(|&g| action.apply(g, omega) == omega)
                .collect();
            let assignments: Vec<SemidirectElement> = picks.iter().zip(vs)
                .map(|(&k, coeffs)| SemidirectElement::new(stab[k], v(2, &coeffs)))
                .collect();
            let result = evaluate_word(&action, &word, &assignments).unwrap();
            let (coeff, _) = decompose(&result.v, omega).unwrap();
            let expected: i64 = (0..2)
                .map(|i| assignments[i].v.entries[omega] as i64 * word.exponent_sum(i))
                .sum();
            prop_assert_eq!(coeff as i64, expected.rem_euclid(2));
        }
    }
}
