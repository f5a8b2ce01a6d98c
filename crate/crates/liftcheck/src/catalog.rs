//! Constructors for the motivating examples: PSL₂(q) on the projective line
//! with its SL₂(q) central extension, plus the small groups and p-groups
//! that feed the sweeps. All constructions are deterministic; generator
//! choices are documented per constructor.

use std::sync::Arc;

use serde_json::Value;

use crate::extensions::{build_extension, cocycle_from_section, CentralExtension, Cocycle};
use crate::groups::{FiniteGroup, GroupHom, Permutation, DEFAULT_ORDER_LIMIT};
use crate::linalg::{is_prime, pow_mod};
use crate::permmod::ActionSpec;
use crate::{Error, Result};

/// Largest field size accepted for the PSL₂/SL₂ constructors.
pub const MAX_PSL2_Q: u64 = 13;

/// A 2×2 matrix over `F_q`, row-major.
type Mat = [u64; 4];

fn mat_mul(q: u64, a: &Mat, b: &Mat) -> Mat {
    [
        (a[0] * b[0] + a[1] * b[2]) % q,
        (a[0] * b[1] + a[1] * b[3]) % q,
        (a[2] * b[0] + a[3] * b[2]) % q,
        (a[2] * b[1] + a[3] * b[3]) % q,
    ]
}

fn check_psl2_q(q: u64) -> Result<()> {
    if q == 2 || !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q > MAX_PSL2_Q {
        return Err(Error::CatalogParam(format!("q = {q} exceeds the bound {MAX_PSL2_Q}")));
    }
    Ok(())
}

/// The permutation of the projective line induced by `m` acting on the
/// right: affine `t ↦ (ta + c)/(tb + d)`, `∞ ↦ (a : b)`. Points are
/// ordered `0, …, q−1, ∞`.
fn mobius_permutation(q: u64, m: &Mat) -> Permutation {
    let [a, b, c, d] = *m;
    let infinity = q as usize;
    let project = |num: u64, den: u64| -> usize {
        if den % q == 0 {
            infinity
        } else {
            ((num % q) * pow_mod(den % q, q - 2, q) % q) as usize
        }
    };
    let mut images = Vec::with_capacity(q as usize + 1);
    for t in 0..q {
        images.push(project(t * a + c, t * b + d));
    }
    images.push(project(a, b));
    Permutation::from_images(images).expect("Möbius maps are bijections")
}

fn sl2_generators(q: u64) -> [Mat; 2] {
    // Unipotent and Weyl generators of SL₂(q).
    [[1, 1, 0, 1], [0, 1, q - 1, 0]]
}

/// PSL₂(q) acting on the projective line of q+1 points.
pub fn psl2_action(q: u64) -> Result<ActionSpec> {
    check_psl2_q(q)?;
    let perms: Vec<Permutation> =
        sl2_generators(q).iter().map(|m| mobius_permutation(q, m)).collect();
    let group = FiniteGroup::from_permutation_generators(
        q as usize + 1,
        &perms,
        DEFAULT_ORDER_LIMIT,
    )?;
    let expected = (q * (q * q - 1) / 2) as usize;
    if group.order() != expected {
        return Err(Error::CatalogParam(format!(
            "PSL2({q}) closure has order {}, expected {expected}",
            group.order()
        )));
    }
    ActionSpec::natural(group, format!("psl2({q})"))
}

/// The central extension `1 → F₂ → SL₂(q) → PSL₂(q) → 1` with cocycle
/// extracted via the minimal-index section.
pub fn sl2_extension(q: u64) -> Result<CentralExtension> {
    check_psl2_q(q)?;
    let action = psl2_action(q)?;
    let psl2 = Arc::clone(&action.group);
    let identity: Mat = [1, 0, 0, 1];
    let (sl2, matrices) = FiniteGroup::from_abstract_generators(
        identity,
        &sl2_generators(q),
        |a, b| mat_mul(q, a, b),
        DEFAULT_ORDER_LIMIT,
    )?;
    if sl2.order() != 2 * psl2.order() {
        return Err(Error::CatalogParam(format!(
            "SL2({q}) closure has order {}, expected {}",
            sl2.order(),
            2 * psl2.order()
        )));
    }
    let images: Vec<usize> = matrices
        .iter()
        .map(|m| {
            psl2.permutation_index(&mobius_permutation(q, m)).ok_or_else(|| {
                Error::CatalogParam("Möbius image is outside PSL2".into())
            })
        })
        .collect::<Result<_>>()?;
    let pi = GroupHom::verified(Arc::clone(&sl2), Arc::clone(&psl2), images)?;
    let minus_identity: Mat = [q - 1, 0, 0, q - 1];
    let kernel_gen = matrices
        .iter()
        .position(|m| *m == minus_identity)
        .expect("-I lies in SL2");
    debug_assert_eq!(pi.kernel().members(), &[0, kernel_gen]);
    let cocycle = cocycle_from_section(&pi, 2, kernel_gen)?;
    let ext = build_extension(&psl2, cocycle)?;
    // Nonsplit: SL₂(q) has a unique involution, so H must as well.
    let involutions = (1..ext.h.order()).filter(|&x| ext.h.element_order(x) == 2).count();
    if involutions != 1 {
        return Err(Error::CatalogParam(format!(
            "SL2({q}) extension has {involutions} involutions, expected 1"
        )));
    }
    Ok(ext)
}

/// `F_p^d` as `d` disjoint p-cycles on `p·d` points.
pub fn elementary_abelian(p: u64, d: usize) -> Result<Arc<FiniteGroup>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d == 0 {
        return Err(Error::CatalogParam("elementary abelian rank must be positive".into()));
    }
    let degree = p as usize * d;
    let gens: Vec<Permutation> = (0..d)
        .map(|i| {
            let cycle: Vec<usize> = (i * p as usize..(i + 1) * p as usize).collect();
            Permutation::from_cycles(degree, &[cycle]).expect("disjoint cycle is valid")
        })
        .collect();
    FiniteGroup::from_permutation_generators(degree, &gens, DEFAULT_ORDER_LIMIT)
}

/// The dihedral group of order 2n on the vertices of an n-gon, generated by
/// the rotation `i ↦ i+1` and the reflection `i ↦ −i`.
pub fn dihedral(n: usize) -> Result<Arc<FiniteGroup>> {
    if n < 3 {
        return Err(Error::CatalogParam("dihedral groups need n >= 3".into()));
    }
    let rotation = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
    let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
    let g = FiniteGroup::from_permutation_generators(
        n,
        &[rotation, reflection],
        DEFAULT_ORDER_LIMIT,
    )?;
    debug_assert_eq!(g.order(), 2 * n);
    Ok(g)
}

/// The quaternion group `{±1, ±i, ±j, ±k}` as a table group generated by
/// `i` and `j`. Elements are pairs (sign, axis).
pub fn quaternion8() -> Arc<FiniteGroup> {
    type Unit = (bool, u8); // (negated, axis) with axes 1, i, j, k
    fn mul(x: &Unit, y: &Unit) -> Unit {
        let (sx, a) = *x;
        let (sy, b) = *y;
        let (s, axis) = match (a, b) {
            (0, b) => (false, b),
            (a, 0) => (false, a),
            (a, b) if a == b => (true, 0),
            // Cyclic rule i·j = k and anticommutativity.
            (a, b) => ((a % 3 + 1) != b, a ^ b),
        };
        (sx ^ sy ^ s, axis)
    }
    let (g, _) = FiniteGroup::from_abstract_generators(
        (false, 0),
        &[(false, 1), (false, 2)],
        |x: &Unit, y: &Unit| mul(x, y),
        100,
    )
    .unwrap();
    debug_assert_eq!(g.order(), 8);
    debug_assert_eq!((1..8).filter(|&x| g.element_order(x) == 2).count(), 1);
    g
}

/// The Klein four-group in its regular degree-4 action.
pub fn klein4_regular() -> ActionSpec {
    let a = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
    let b = Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
    let g = FiniteGroup::from_permutation_generators(4, &[a, b], 100).unwrap();
    ActionSpec::natural(g, "klein4 regular").unwrap()
}

/// A₄ in its natural degree-4 action.
pub fn a4_natural() -> ActionSpec {
    let a = Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap();
    let b = Permutation::from_cycles(4, &[vec![1, 2, 3]]).unwrap();
    let g = FiniteGroup::from_permutation_generators(4, &[a, b], 100).unwrap();
    debug_assert_eq!(g.order(), 12);
    ActionSpec::natural(g, "a4 natural").unwrap()
}

/// The Heisenberg group of order p³ (upper unitriangular 3×3 matrices over
/// `F_p`) as a table group on triples `(a, b, c)`.
pub fn heisenberg(p: u64) -> Result<Arc<FiniteGroup>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let gens = [[1u64, 0, 0], [0u64, 1, 0]];
    let (g, _) = FiniteGroup::from_abstract_generators(
        [0u64; 3],
        &gens,
        |x, y| [(x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p],
        DEFAULT_ORDER_LIMIT,
    )?;
    debug_assert_eq!(g.order(), (p * p * p) as usize);
    Ok(g)
}

/// The modular (semidihedral-adjacent) group of order 16,
/// `⟨a, b | a⁸, b², b⁻¹ab = a⁵⟩`, as a table group on pairs `(i, j)`.
pub fn modular16() -> Arc<FiniteGroup> {
    let gens = [[1u64, 0], [0u64, 1]];
    let (g, _) = FiniteGroup::from_abstract_generators(
        [0u64; 2],
        &gens,
        |x, y| {
            let twist = if y[1] == 0 { 1 } else { 5 };
            [(x[0] * twist + y[0]) % 8, (x[1] + y[1]) % 2]
        },
        100,
    )
    .unwrap();
    debug_assert_eq!(g.order(), 16);
    g
}

/// Direct product as a table group on pairs, index `i·|B| + j`.
pub fn direct_product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<Arc<FiniteGroup>> {
    let (na, nb) = (a.order(), b.order());
    let mut rows = vec![vec![0usize; na * nb]; na * nb];
    for i1 in 0..na {
        for j1 in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    rows[i1 * nb + j1][i2 * nb + j2] = a.mul(i1, i2) * nb + b.mul(j1, j2);
                }
            }
        }
    }
    FiniteGroup::from_table(rows)
}

/// The p-groups of order ≤ 64 exercised by the presentation certificate
/// sweep, as `(name, group, p)`.
pub fn p_group_catalog() -> Vec<(String, Arc<FiniteGroup>, u64)> {
    let q8 = quaternion8();
    let d4 = dihedral(4).unwrap();
    let c2 = FiniteGroup::cyclic(2);
    let mut out: Vec<(String, Arc<FiniteGroup>, u64)> = vec![
        ("C2".into(), FiniteGroup::cyclic(2), 2),
        ("C4".into(), FiniteGroup::cyclic(4), 2),
        ("C8".into(), FiniteGroup::cyclic(8), 2),
        ("C16".into(), FiniteGroup::cyclic(16), 2),
        ("C32".into(), FiniteGroup::cyclic(32), 2),
        ("F2^2".into(), elementary_abelian(2, 2).unwrap(), 2),
        ("F2^3".into(), elementary_abelian(2, 3).unwrap(), 2),
        ("F2^4".into(), elementary_abelian(2, 4).unwrap(), 2),
        ("D4".into(), Arc::clone(&d4), 2),
        ("Q8".into(), Arc::clone(&q8), 2),
        ("C4xC2".into(), direct_product(&FiniteGroup::cyclic(4), &c2).unwrap(), 2),
        ("D4xC2".into(), direct_product(&d4, &c2).unwrap(), 2),
        ("Q8xC2".into(), direct_product(&q8, &c2).unwrap(), 2),
        ("modular16".into(), modular16(), 2),
        ("C3".into(), FiniteGroup::cyclic(3), 3),
        ("C9".into(), FiniteGroup::cyclic(9), 3),
        ("C27".into(), FiniteGroup::cyclic(27), 3),
        ("F3^2".into(), elementary_abelian(3, 2).unwrap(), 3),
        ("F3^3".into(), elementary_abelian(3, 3).unwrap(), 3),
        ("heisenberg(3)".into(), heisenberg(3).unwrap(), 3),
    ];
    out.retain(|(_, g, _)| g.order() <= 64);
    out
}

/// The catalog-constructible groups of order at most `bound`, as
/// `(name, group)`, for the liftability and theorem sweeps.
pub fn groups_of_order_upto(bound: usize) -> Vec<(String, Arc<FiniteGroup>)> {
    let mut out: Vec<(String, Arc<FiniteGroup>)> = Vec::new();
    for n in 1..=bound {
        out.push((format!("C{n}"), FiniteGroup::cyclic(n)));
    }
    for (p, d) in [(2u64, 2usize), (2, 3), (2, 4), (3, 2)] {
        out.push((format!("F{p}^{d}"), elementary_abelian(p, d).unwrap()));
    }
    for n in 3..=8usize {
        out.push((format!("D{n}"), dihedral(n).unwrap()));
    }
    out.push(("Q8".into(), quaternion8()));
    out.push(("A4".into(), Arc::clone(&a4_natural().group)));
    out.push(("modular16".into(), modular16()));
    let c2 = FiniteGroup::cyclic(2);
    let c4 = FiniteGroup::cyclic(4);
    out.push(("C4xC2".into(), direct_product(&c4, &c2).unwrap()));
    out.push(("C4xC4".into(), direct_product(&c4, &c4).unwrap()));
    out.push((
        "C4xC2xC2".into(),
        direct_product(&c4, &elementary_abelian(2, 2).unwrap()).unwrap(),
    ));
    out.push(("D4xC2".into(), direct_product(&dihedral(4).unwrap(), &c2).unwrap()));
    out.push(("Q8xC2".into(), direct_product(&quaternion8(), &c2).unwrap()));
    out.push(("C6xC2".into(), direct_product(&FiniteGroup::cyclic(6), &c2).unwrap()));
    out.retain(|(_, g)| g.order() <= bound);
    out.sort_by(|a, b| (a.1.order(), a.0.clone()).cmp(&(b.1.order(), b.0.clone())));
    out
}

/// A group resolved from a JSON spec: the group itself, its name, and a
/// natural action when the spec carries one.
#[derive(Debug, Clone)]
pub struct ParsedGroup {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub action: Option<ActionSpec>,
}

fn param_u64(spec: &Value, key: &str) -> Result<u64> {
    spec.get(key)
        .or_else(|| spec.get("params").and_then(|p| p.get(key)))
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::CatalogParam(format!("missing integer parameter `{key}`")))
}

/// Parses a group spec: either `{ "points": n, "generators": [[…], …] }`
/// for an explicit permutation group, or `{ "catalog": name, … }`.
pub fn parse_group_spec(spec: &Value) -> Result<ParsedGroup> {
    if let Some(points) = spec.get("points").and_then(Value::as_u64) {
        let gens_json = spec
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("permutation spec needs `generators`".into()))?;
        let mut gens = Vec::with_capacity(gens_json.len());
        for g in gens_json {
            let images: Vec<usize> = g
                .as_array()
                .ok_or_else(|| Error::InvalidInput("generator must be an image array".into()))?
                .iter()
                .map(|v| {
                    v.as_u64().map(|x| x as usize).ok_or_else(|| {
                        Error::InvalidInput("generator images must be integers".into())
                    })
                })
                .collect::<Result<_>>()?;
            if images.len() != points as usize {
                return Err(Error::InvalidInput(format!(
                    "generator on {} points, expected {points}",
                    images.len()
                )));
            }
            gens.push(Permutation::from_images(images)?);
        }
        let group = FiniteGroup::from_permutation_generators(
            points as usize,
            &gens,
            DEFAULT_ORDER_LIMIT,
        )?;
        let action = ActionSpec::natural(Arc::clone(&group), "input permutation group")?;
        return Ok(ParsedGroup {
            name: format!("perm group on {points} points"),
            group,
            action: Some(action),
        });
    }
    let name = spec
        .get("catalog")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidInput("group spec needs `points` or `catalog`".into()))?;
    match name {
        "psl2" => {
            let q = param_u64(spec, "q")?;
            let action = psl2_action(q)?;
            Ok(ParsedGroup {
                name: format!("psl2({q})"),
                group: Arc::clone(&action.group),
                action: Some(action),
            })
        }
        "cyclic" => {
            let n = param_u64(spec, "n")?;
            Ok(ParsedGroup {
                name: format!("C{n}"),
                group: FiniteGroup::cyclic(n as usize),
                action: None,
            })
        }
        "elementary" => {
            let p = param_u64(spec, "p")?;
            let d = param_u64(spec, "d")? as usize;
            Ok(ParsedGroup {
                name: format!("F{p}^{d}"),
                group: elementary_abelian(p, d)?,
                action: None,
            })
        }
        "dihedral" => {
            let n = param_u64(spec, "n")? as usize;
            let group = dihedral(n)?;
            let action = ActionSpec::natural(Arc::clone(&group), format!("D{n} natural"))?;
            Ok(ParsedGroup { name: format!("D{n}"), group, action: Some(action) })
        }
        "quaternion8" => {
            Ok(ParsedGroup { name: "Q8".into(), group: quaternion8(), action: None })
        }
        "klein4" => {
            let action = klein4_regular();
            Ok(ParsedGroup {
                name: "V4".into(),
                group: Arc::clone(&action.group),
                action: Some(action),
            })
        }
        "a4" => {
            let action = a4_natural();
            Ok(ParsedGroup {
                name: "A4".into(),
                group: Arc::clone(&action.group),
                action: Some(action),
            })
        }
        "heisenberg" => {
            let p = param_u64(spec, "p")?;
            Ok(ParsedGroup {
                name: format!("heisenberg({p})"),
                group: heisenberg(p)?,
                action: None,
            })
        }
        "modular16" => {
            Ok(ParsedGroup { name: "modular16".into(), group: modular16(), action: None })
        }
        other => Err(Error::UnknownCatalog {
            name: other.to_string(),
            params: spec.get("params").map(|v| v.to_string()).unwrap_or_default(),
        }),
    }
}

/// Parses an extension spec: `{ "group": <spec>, "p": p, "cocycle": [[…]…] }`
/// or `{ "catalog": "sl2", "q": q }`.
pub fn parse_extension_spec(spec: &Value) -> Result<(String, CentralExtension)> {
    if spec.get("catalog").and_then(Value::as_str) == Some("sl2") {
        let q = param_u64(spec, "q")?;
        return Ok((format!("sl2({q})"), sl2_extension(q)?));
    }
    let group_spec = spec
        .get("group")
        .ok_or_else(|| Error::InvalidInput("extension spec needs `group` or catalog sl2".into()))?;
    let parsed = parse_group_spec(group_spec)?;
    let p = param_u64(spec, "p")?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let rows_json = spec
        .get("cocycle")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("extension spec needs `cocycle` rows".into()))?;
    let rows: Vec<Vec<u64>> = rows_json
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::InvalidInput("cocycle rows must be arrays".into()))?
                .iter()
                .map(|v| {
                    v.as_u64().ok_or_else(|| {
                        Error::InvalidInput("cocycle entries must be residues".into())
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let cocycle = Cocycle::verified(&parsed.group, p, &rows)?;
    let ext = build_extension(&parsed.group, cocycle)?;
    Ok((parsed.name, ext))
}
