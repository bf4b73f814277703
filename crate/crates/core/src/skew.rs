//! Arithmetic in `R[t;σ]` and `R[t^±1;σ]`, governed by `(f tⁱ)(g tʲ) = f σⁱ(g) tⁱ⁺ʲ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::autom::{compose, Automorphism};
use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::ring::{parse_poly, Mode, Poly};

/// Finite sum `Σ fᵢ tⁱ` over a fixed automorphism.
///
/// Negative powers of `t` are only admitted over the Laurent ring.
#[derive(Clone, Debug)]
pub struct SkewPoly {
    sigma: Arc<Automorphism>,
    coeffs: BTreeMap<i64, Poly>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_sigma(&self.sigma, &other.sigma)
    }
}

fn same_sigma(a: &Arc<Automorphism>, b: &Arc<Automorphism>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SkewPoly {
    pub fn zero(sigma: Arc<Automorphism>) -> Self {
        Self {
            sigma,
            coeffs: BTreeMap::new(),
        }
    }

    /// The element `f tᵈ`.
    pub fn term(sigma: Arc<Automorphism>, f: Poly, d: i64) -> Result<Self> {
        let mut u = Self::zero(sigma);
        u.add_term(d, f)?;
        Ok(u)
    }

    pub fn t(sigma: Arc<Automorphism>) -> Self {
        let one = Poly::one(sigma.mode());
        Self::term(sigma, one, 1).expect("t is admissible")
    }

    pub fn from_terms(
        sigma: Arc<Automorphism>,
        terms: impl IntoIterator<Item = (i64, Poly)>,
    ) -> Result<Self> {
        let mut u = Self::zero(sigma);
        for (d, f) in terms {
            u.add_term(d, f)?;
        }
        Ok(u)
    }

    fn add_term(&mut self, d: i64, f: Poly) -> Result<()> {
        if f.mode() != self.sigma.mode() {
            return Err(Error::ModeMismatch(format!(
                "coefficient in {:?} ring over automorphism of {:?} ring",
                f.mode(),
                self.sigma.mode()
            )));
        }
        if d < 0 && self.sigma.mode() != Mode::Laurent {
            return Err(Error::Invalid(format!("t^{d} needs the skew-Laurent ring")));
        }
        if f.is_zero() {
            return Ok(());
        }
        let slot = self.coeffs.entry(d).or_insert_with(|| Poly::zero(f.mode()));
        *slot = slot.try_add(&f)?;
        if slot.is_zero() {
            self.coeffs.remove(&d);
        }
        Ok(())
    }

    pub fn sigma(&self) -> &Arc<Automorphism> {
        &self.sigma
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, d: i64) -> Poly {
        self.coeffs
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.sigma.mode()))
    }

    /// `(t-degree, coefficient)` pairs in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Poly)> {
        self.coeffs.iter().map(|(d, f)| (*d, f))
    }

    /// Homogeneous of a single t-degree.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        match self.coeffs.len() {
            1 => self.coeffs.keys().next().copied(),
            _ => None,
        }
    }

    fn check_sigma(&self, other: &Self) -> Result<()> {
        if !same_sigma(&self.sigma, &other.sigma) {
            return Err(Error::SigmaMismatch(format!(
                "{} vs {}",
                self.sigma, other.sigma
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_sigma(other)?;
        let mut out = self.clone();
        for (d, f) in &other.coeffs {
            out.add_term(*d, f.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.sigma.clone());
        }
        Self {
            sigma: self.sigma.clone(),
            coeffs: self.coeffs.iter().map(|(d, f)| (*d, f.scale(c))).collect(),
        }
    }
}

/// The product in the skew ring.
pub fn skew_mul(u: &SkewPoly, v: &SkewPoly) -> Result<SkewPoly> {
    u.check_sigma(v)?;
    let mut out = SkewPoly::zero(u.sigma.clone());
    for (i, f) in &u.coeffs {
        for (j, g) in &v.coeffs {
            let twisted = u.sigma.apply_power(*i, g)?;
            out.add_term(i + j, f.try_mul(&twisted)?)?;
        }
    }
    Ok(out)
}

/// One generator of a word: the element `coeff · t^t_power`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub coeff: Poly,
    pub t_power: i64,
}

impl Letter {
    pub fn new(coeff: Poly, t_power: i64) -> Self {
        Self { coeff, t_power }
    }

    /// Parses `xt`, `(1 + y - x^2)t^2`, `t`, `x*yt^-1` (the body inside the outer parentheses).
    pub fn parse(body: &str, mode: Mode) -> Result<Self> {
        let s: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        let tpos = s
            .rfind('t')
            .ok_or_else(|| Error::Parse(format!("letter {body:?} has no t")))?;
        let (coeff_str, tail) = s.split_at(tpos);
        let t_power = match &tail[1..] {
            "" => 1,
            rest => rest
                .strip_prefix('^')
                .and_then(|k| k.parse::<i64>().ok())
                .ok_or_else(|| Error::Parse(format!("bad t-power in letter {body:?}")))?,
        };
        let coeff_str = coeff_str.strip_suffix('*').unwrap_or(coeff_str);
        let coeff = if coeff_str.is_empty() {
            Poly::one(mode)
        } else {
            parse_poly(coeff_str, mode)?
        };
        if coeff.is_zero() {
            return Err(Error::Parse(format!("letter {body:?} is zero")));
        }
        Ok(Self { coeff, t_power })
    }
}

impl fmt::Display for Letter {
    /// Renders the body without the outer parentheses, e.g. `xt` or `(1 + y)t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeff.to_string();
        if !self.coeff.is_one() {
            if self.coeff.len() == 1 && !c.starts_with('-') {
                f.write_str(&c)?;
            } else {
                write!(f, "({c})")?;
            }
        }
        match self.t_power {
            1 => write!(f, "t"),
            k => write!(f, "t^{k}"),
        }
    }
}

/// A finite set of letters over one automorphism; words index into it.
#[derive(Clone, Debug)]
pub struct Alphabet {
    sigma: Arc<Automorphism>,
    letters: Vec<Letter>,
}

impl Alphabet {
    pub fn new(sigma: Arc<Automorphism>, letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            if l.coeff.mode() != sigma.mode() {
                return Err(Error::ModeMismatch(format!(
                    "letter ({l}) not in the ring of σ"
                )));
            }
            if l.t_power < 0 && sigma.mode() != Mode::Laurent {
                return Err(Error::Invalid(format!(
                    "letter ({l}) needs the skew-Laurent ring"
                )));
            }
        }
        Ok(Self { sigma, letters })
    }

    /// The two-letter alphabet `{a tᵖ, b tᵖ}`.
    pub fn pair(sigma: Arc<Automorphism>, a: Poly, b: Poly, t_power: i64) -> Result<Self> {
        Self::new(
            sigma,
            vec![Letter::new(a, t_power), Letter::new(b, t_power)],
        )
    }

    pub fn sigma(&self) -> &Arc<Automorphism> {
        &self.sigma
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter(&self, k: usize) -> &Letter {
        &self.letters[k]
    }

    /// Index of `l`, appending it if new.
    pub fn intern(&mut self, l: Letter) -> usize {
        if let Some(k) = self.letters.iter().position(|m| *m == l) {
            return k;
        }
        self.letters.push(l);
        self.letters.len() - 1
    }

    pub fn letter_element(&self, k: usize) -> Result<SkewPoly> {
        let l = &self.letters[k];
        SkewPoly::term(self.sigma.clone(), l.coeff.clone(), l.t_power)
    }

    /// Renders a word with runs collapsed, e.g. `(xt)^2(yt)`.
    pub fn render(&self, w: &Word) -> String {
        let mut out = String::new();
        let mut k = 0;
        let ls = w.letters();
        while k < ls.len() {
            let mut run = 1;
            while k + run < ls.len() && ls[k + run] == ls[k] {
                run += 1;
            }
            out.push('(');
            out.push_str(&self.letters[ls[k]].to_string());
            out.push(')');
            if run > 1 {
                out.push('^');
                out.push_str(&run.to_string());
            }
            k += run;
        }
        out
    }

    /// Parses `(xt)^2(yt)`, interning new letters.
    pub fn parse_word(&mut self, s: &str) -> Result<Word> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let mut out = Vec::new();
        while pos < chars.len() {
            if chars[pos] != '(' {
                return Err(Error::Parse(format!("expected '(' in word {s:?}")));
            }
            let mut depth = 0;
            let start = pos + 1;
            let mut end = None;
            for (k, c) in chars.iter().enumerate().skip(pos) {
                match c {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            end = Some(k);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let end =
                end.ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
            let body: String = chars[start..end].iter().collect();
            let letter = self.intern(Letter::parse(&body, self.sigma.mode())?);
            pos = end + 1;
            let mut reps = 1usize;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let ds = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits: String = chars[ds..pos].iter().collect();
                reps = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad repeat count in {s:?}")))?;
                if reps == 0 {
                    return Err(Error::Parse("repeat count must be ≥ 1".into()));
                }
            }
            out.extend(std::iter::repeat_n(letter, reps));
        }
        Word::new(out)
    }
}

/// Nonempty sequence of letter indices. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Invalid("empty word".into()));
        }
        Ok(Self(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Word of length `n` over `{0, 1}` whose letters are the bits of `index`, most significant first.
    pub fn from_bits(index: usize, n: usize) -> Self {
        Self((0..n).rev().map(|k| (index >> k) & 1).collect())
    }
}

/// Product of the letters of `w` in the skew ring.
///
/// The coefficient is `c₀ σ^{d₀}(c₁) σ^{d₀+d₁}(c₂) ⋯` at t-degree `Σ dᵢ`.
pub fn expand_word(alphabet: &Alphabet, w: &Word) -> Result<SkewPoly> {
    let sigma = alphabet.sigma();
    let mut coeff = Poly::one(sigma.mode());
    let mut degree = 0i64;
    for &k in w.letters() {
        let l = alphabet
            .letters
            .get(k)
            .ok_or_else(|| Error::Invalid(format!("letter index {k} outside alphabet")))?;
        coeff = coeff.try_mul(&sigma.apply_power(degree, &l.coeff)?)?;
        degree += l.t_power;
    }
    SkewPoly::term(sigma.clone(), coeff, degree)
}

/// Φ: `f tʲ ↦ τ(f) sʲ`, landing in the skew ring over `τ σ τ⁻¹`.
pub fn conjugate_map(u: &SkewPoly, tau: &Automorphism) -> Result<SkewPoly> {
    if tau.mode() != u.sigma.mode() {
        return Err(Error::ModeMismatch(
            "conjugating automorphism lives in another ring".into(),
        ));
    }
    let target = Arc::new(compose(tau, &compose(&u.sigma, &tau.inverse())?)?);
    conjugate_into(u, tau, target)
}

/// Φ with a caller-supplied target automorphism, which must equal `τ σ τ⁻¹`.
pub fn conjugate_into(
    u: &SkewPoly,
    tau: &Automorphism,
    target: Arc<Automorphism>,
) -> Result<SkewPoly> {
    let mut out = SkewPoly::zero(target);
    for (d, f) in &u.coeffs {
        out.add_term(*d, tau.apply(f)?)?;
    }
    Ok(out)
}

/// The gauge multipliers: `a_m = a σ(a) ⋯ σ^{m−1}(a)`, `a₀ = 1`, `a_{−m} = σ^{−m}(a_m)⁻¹`.
pub fn gauge_factor(sigma: &Automorphism, a: &Poly, m: i64) -> Result<Poly> {
    if !a.is_unit() {
        return Err(Error::Invalid(format!("gauge element {a} is not a unit")));
    }
    let mut acc = Poly::one(sigma.mode());
    for k in 0..m.unsigned_abs() as i64 {
        acc = acc.try_mul(&sigma.apply_power(k, a)?)?;
    }
    if m < 0 {
        acc = sigma.apply_power(m, &acc)?.unit_inverse()?;
    }
    Ok(acc)
}

/// Ψ: `g tᵐ ↦ a_m g tᵐ` for a unit `a`.
pub fn gauge_map(u: &SkewPoly, a: &Poly) -> Result<SkewPoly> {
    if a.mode() != u.sigma.mode() {
        return Err(Error::ModeMismatch(
            "gauge element lives in another ring".into(),
        ));
    }
    if !a.is_unit() {
        return Err(Error::Invalid(format!("gauge element {a} is not a unit")));
    }
    let mut out = SkewPoly::zero(u.sigma.clone());
    for (m, g) in &u.coeffs {
        out.add_term(*m, gauge_factor(&u.sigma, a, *m)?.try_mul(g)?)?;
    }
    Ok(out)
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(d, c)| {
                if *d == 0 {
                    return if c.len() == 1 {
                        c.to_string()
                    } else {
                        format!("({c})")
                    };
                }
                Letter::new(c.clone(), *d).to_string()
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autom::{monomial_autom, IntMat2};
    use crate::exactnum::rat_int;

    fn l(s: &str) -> Poly {
        parse_poly(s, Mode::Laurent).unwrap()
    }

    fn tau() -> Arc<Automorphism> {
        Arc::new(monomial_autom(IntMat2::new(0, 1, 1, 1)).unwrap())
    }

    #[test]
    fn product_examples() {
        let s = tau();
        let xt = SkewPoly::term(s.clone(), l("x"), 1).unwrap();
        let yt = SkewPoly::term(s.clone(), l("y"), 1).unwrap();
        assert_eq!(
            skew_mul(&xt, &yt).unwrap(),
            SkewPoly::term(s.clone(), l("x^2*y"), 2).unwrap()
        );
        let f = SkewPoly::term(s.clone(), l("x + y^-1"), 0).unwrap();
        let g = SkewPoly::term(s.clone(), l("3x*y"), 0).unwrap();
        assert_eq!(
            skew_mul(&f, &g).unwrap(),
            SkewPoly::term(s.clone(), l("3x^2*y + 3x"), 0).unwrap()
        );
        let t = SkewPoly::t(s.clone());
        let xtinv = SkewPoly::term(s.clone(), l("x"), -1).unwrap();
        assert_eq!(
            skew_mul(&t, &xtinv).unwrap(),
            SkewPoly::term(s, l("y"), 0).unwrap()
        );
    }

    #[test]
    fn mismatched_sigma_rejected() {
        let a = SkewPoly::t(tau());
        let b = SkewPoly::t(Arc::new(monomial_autom(IntMat2::IDENTITY).unwrap()));
        assert!(matches!(skew_mul(&a, &b), Err(Error::SigmaMismatch(_))));
        let same = SkewPoly::t(tau());
        assert!(skew_mul(&a, &same).is_ok());
    }

    #[test]
    fn negative_degree_needs_laurent() {
        let h = Arc::new(crate::autom::henon_paper(rat_int(1), rat_int(1)).unwrap());
        assert!(SkewPoly::term(h, Poly::one(Mode::Poly), -1).is_err());
    }

    #[test]
    fn word_expansion() {
        let s = tau();
        let mut a = Alphabet::pair(s.clone(), l("x"), l("y"), 1).unwrap();
        let w = a.parse_word("(xt)^2(yt)").unwrap();
        assert_eq!(w.letters(), &[0, 0, 1]);
        // x · τ(x) · τ²(y) = x · y · x y²
        assert_eq!(
            expand_word(&a, &w).unwrap(),
            SkewPoly::term(s.clone(), l("x^2*y^3"), 3).unwrap()
        );
        let single = a.parse_word("(xt)").unwrap();
        assert_eq!(
            expand_word(&a, &single).unwrap(),
            SkewPoly::term(s.clone(), l("x"), 1).unwrap()
        );
        assert_eq!(a.render(&w), "(xt)^2(yt)");
        let id = Arc::new(monomial_autom(IntMat2::IDENTITY).unwrap());
        let ai = Alphabet::pair(id.clone(), l("x"), l("y"), 1).unwrap();
        let w5 = Word::new(vec![0; 5]).unwrap();
        assert_eq!(
            expand_word(&ai, &w5).unwrap(),
            SkewPoly::term(id, l("x^5"), 5).unwrap()
        );
    }

    #[test]
    fn word_expansion_matches_repeated_products() {
        let s = tau();
        let mut a = Alphabet::pair(s.clone(), l("x + 2y^-1"), l("y"), 1).unwrap();
        let w = a.parse_word("(yt)(x + 2y^-1t)^2(yt)").unwrap();
        let mut prod = a.letter_element(w.letters()[0]).unwrap();
        for &k in &w.letters()[1..] {
            prod = skew_mul(&prod, &a.letter_element(k).unwrap()).unwrap();
        }
        assert_eq!(expand_word(&a, &w).unwrap(), prod);
    }

    #[test]
    fn letter_parse_and_render() {
        let p = Letter::parse("(1 + y - x^2)t^2", Mode::Poly).unwrap();
        assert_eq!(p.t_power, 2);
        assert_eq!(p.to_string(), "(1 + y - x^2)t^2");
        assert_eq!(Letter::parse("t", Mode::Poly).unwrap().to_string(), "t");
        assert_eq!(
            Letter::parse("x*yt^-1", Mode::Laurent).unwrap().to_string(),
            "x*yt^-1"
        );
        assert!(Letter::parse("x", Mode::Poly).is_err());
        assert!(Letter::parse("0t", Mode::Poly).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let s = Arc::new(monomial_autom(IntMat2::new(1, 1, 1, 2)).unwrap());
        let t = monomial_autom(IntMat2::new(0, 1, 1, 1)).unwrap();
        let u = SkewPoly::term(s.clone(), l("x"), 1).unwrap();
        let phi = conjugate_map(&u, &t).unwrap();
        assert_eq!(phi.coeff(1), l("y"));
        let target = compose(&t, &compose(&s, &t.inverse()).unwrap()).unwrap();
        assert_eq!(**phi.sigma(), target);
        let f = SkewPoly::term(s, l("x^2 - y"), 0).unwrap();
        assert_eq!(conjugate_map(&f, &t).unwrap().coeff(0), l("y^2 - x*y"));
    }

    #[test]
    fn gauge_examples() {
        let s = tau();
        let x = l("x");
        let t = SkewPoly::t(s.clone());
        assert_eq!(
            gauge_map(&t, &x).unwrap(),
            SkewPoly::term(s.clone(), x.clone(), 1).unwrap()
        );
        let u = SkewPoly::term(s.clone(), l("x^-1*y"), 1).unwrap();
        assert_eq!(
            gauge_map(&u, &x).unwrap(),
            SkewPoly::term(s.clone(), l("y"), 1).unwrap()
        );
        let g = SkewPoly::term(s.clone(), l("1 + x*y"), 0).unwrap();
        assert_eq!(gauge_map(&g, &x).unwrap(), g);
        assert!(gauge_map(&g, &l("1 + x")).is_err());
    }
}
