//! Free-group words over an indexed alphabet, exponent sums, and right Fox
//! derivatives together with their specialization into the integral group
//! ring of a finite group.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::groups::FiniteGroup;
use crate::{Error, Result};

/// A single signed generator occurrence `x_i^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    /// `+1` or `-1`.
    pub sign: i8,
}

impl Letter {
    pub fn new(generator: usize, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "letter sign must be ±1");
        Letter { generator, sign }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, sign: -self.sign }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign == -other.sign
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Freely reduces a raw letter sequence with a stack scan.
pub fn reduce(raw: &[Letter]) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(raw.len());
    for &l in raw {
        match stack.last() {
            Some(&top) if top.cancels(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    Word { letters: stack }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// A single-letter word `x_i`.
    pub fn generator(i: usize) -> Self {
        Word { letters: vec![Letter::new(i, 1)] }
    }

    /// `x_i^e` for any integer exponent.
    pub fn power(i: usize, e: i64) -> Self {
        let sign = if e >= 0 { 1 } else { -1 };
        Word { letters: vec![Letter::new(i, sign); e.unsigned_abs() as usize] }
    }

    pub fn from_letters(raw: Vec<Letter>) -> Self {
        reduce(&raw)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index occurring, plus one.
    pub fn alphabet_span(&self) -> usize {
        self.letters.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut raw = self.letters.clone();
        raw.extend_from_slice(&other.letters);
        reduce(&raw)
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// The commutator `self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse().concat(&other.inverse()).concat(self).concat(other)
    }

    /// Signed count of occurrences of generator `x` (`μ_x`).
    pub fn exponent_sum(&self, x: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == x)
            .map(|l| l.sign as i64)
            .sum()
    }

    /// Right Fox derivative `∂w/∂x` as an element of the group ring `ZF`.
    ///
    /// Computed by a single left-to-right scan: each occurrence of `x` at
    /// position `k` contributes `ε_k · f_k`, where `f_k` is the suffix
    /// starting after position `k` when `ε_k = +1`, and the suffix starting
    /// at position `k` (including the inverse letter itself) when
    /// `ε_k = −1`.
    pub fn fox_derivative(&self, x: usize) -> GroupRingElement<Word> {
        let mut out = GroupRingElement::zero();
        for (k, l) in self.letters.iter().enumerate() {
            if l.generator != x {
                continue;
            }
            let suffix_start = if l.sign == 1 { k + 1 } else { k };
            let f_k = Word { letters: self.letters[suffix_start..].to_vec() };
            out.add_term(f_k, l.sign as i64);
        }
        out
    }

    /// Evaluates the word in a finite group under `images[i] = image of x_i`.
    pub fn evaluate(&self, group: &FiniteGroup, images: &[usize]) -> Result<usize> {
        let mut acc = FiniteGroup::IDENTITY;
        for l in &self.letters {
            let g = *images
                .get(l.generator)
                .ok_or(Error::MissingImage(l.generator))?;
            let g = if l.sign == 1 { g } else { group.inv(g) };
            acc = group.mul(acc, g);
        }
        Ok(acc)
    }

    /// Substitutes each generator by a replacement word and freely reduces.
    pub fn substitute(&self, replacement: impl Fn(usize) -> Word) -> Word {
        let mut raw = Vec::new();
        for l in &self.letters {
            let r = replacement(l.generator);
            if l.sign == 1 {
                raw.extend_from_slice(r.letters());
            } else {
                raw.extend(r.letters().iter().rev().map(|x| x.inverse()));
            }
        }
        reduce(&raw)
    }
}

impl fmt::Display for Word {
    /// Serializes as `x0^1 x1^-1 x0^2`; the empty word prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let mut runs: Vec<(usize, i64)> = Vec::new();
        for l in &self.letters {
            match runs.last_mut() {
                Some((g, e)) if *g == l.generator && e.signum() == l.sign as i64 => {
                    *e += l.sign as i64
                }
                _ => runs.push((l.generator, l.sign as i64)),
            }
        }
        let mut first = true;
        for (g, e) in runs {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "x{}^{}", g, e)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let trimmed = s.trim();
        if trimmed == "e" || trimmed.is_empty() {
            return Ok(Word::identity());
        }
        let mut raw = Vec::new();
        let mut pos = 0usize;
        for tok in trimmed.split_whitespace() {
            let parse_err = |message: &str| Error::WordParse {
                position: pos,
                message: format!("{message} in token {tok:?}"),
            };
            let rest = tok
                .strip_prefix('x')
                .ok_or_else(|| parse_err("expected generator token starting with 'x'"))?;
            let (gen_str, exp_str) = rest
                .split_once('^')
                .ok_or_else(|| parse_err("expected '^' separating index and exponent"))?;
            let generator: usize =
                gen_str.parse().map_err(|_| parse_err("bad generator index"))?;
            let exponent: i64 = exp_str.parse().map_err(|_| parse_err("bad exponent"))?;
            let sign = if exponent >= 0 { 1 } else { -1 };
            for _ in 0..exponent.unsigned_abs() {
                raw.push(Letter::new(generator, sign));
            }
            pos += tok.len() + 1;
        }
        Ok(reduce(&raw))
    }
}

/// A formal integer-linear combination of elements of a group: words for the
/// free group ring `ZF`, element indices for `ZG`. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement<K: Ord + Clone> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord + Clone> GroupRingElement<K> {
    pub fn zero() -> Self {
        GroupRingElement { terms: BTreeMap::new() }
    }

    pub fn single(key: K, coeff: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(key, coeff);
        e
    }

    pub fn add_term(&mut self, key: K, coeff: i64) {
        use std::collections::btree_map::Entry;
        if coeff == 0 {
            return;
        }
        match self.terms.entry(key) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl GroupRingElement<Word> {
    /// Right-multiplies every term by `w` in `ZF`.
    pub fn mul_word_right(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.terms() {
            out.add_term(k.concat(w), c);
        }
        out
    }

    /// Left-multiplies every term by `w` in `ZF`.
    pub fn mul_word_left(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.terms() {
            out.add_term(w.concat(k), c);
        }
        out
    }

    /// Applies the ring homomorphism `ZF → ZG` extending `x_i ↦ images[i]`,
    /// merging coefficients of coinciding images.
    pub fn specialize(
        &self,
        group: &FiniteGroup,
        images: &[usize],
    ) -> Result<GroupRingElement<usize>> {
        let mut out = GroupRingElement::zero();
        for (w, c) in self.terms() {
            out.add_term(w.evaluate(group, images)?, c);
        }
        Ok(out)
    }
}
