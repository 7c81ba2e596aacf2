//! Exact Clifford-algebra arithmetic for the quadratic space of `so(2n)`.
//!
//! The space `V` has `n` generator pairs. Pair `j` is either isotropic
//! (`e_j, f_j` with `Q(e_j, f_j) = 1`, `Q(e_j, e_j) = Q(f_j, f_j) = 0`) or
//! substituted by an orthonormal pair (`v_j, w_j` with
//! `Q(v,v) = Q(w,w) = 1`, `Q(v,w) = 0`). Elements are maps from ordered
//! generator monomials to Gaussian-rational coefficients, multiplied via
//! `xy + yx = 2Q(x,y)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Signed, Zero};

use crate::linalg::{rat, rat_frac, Rat};
use crate::orbits::{ChevLabel, GroupType, OrbitLabel, Tag};
use crate::weight::Weight;
use crate::{Error, Result};

/// An exact Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn zero() -> GaussRat {
        GaussRat::default()
    }

    pub fn one() -> GaussRat {
        GaussRat {
            re: Rat::one(),
            im: Rat::zero(),
        }
    }

    pub fn i_unit() -> GaussRat {
        GaussRat {
            re: Rat::zero(),
            im: Rat::one(),
        }
    }

    pub fn from_int(v: i64) -> GaussRat {
        GaussRat {
            re: rat(v),
            im: Rat::zero(),
        }
    }

    pub fn from_rat(re: Rat) -> GaussRat {
        GaussRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn mul(&self, other: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn neg(&self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn scale_int(&self, k: i64) -> GaussRat {
        GaussRat {
            re: &self.re * rat(k),
            im: &self.im * rat(k),
        }
    }

    /// Multiplies by `i^k`.
    pub fn times_i_pow(&self, k: u32) -> GaussRat {
        let mut out = self.clone();
        for _ in 0..(k % 4) {
            out = out.mul(&GaussRat::i_unit());
        }
        out
    }
}

impl fmt::Display for GaussRat {
    /// `(+3/2+1/2i)` style: explicit leading sign, imaginary part suffixed
    /// with `i`, zero parts omitted (pure zero prints `(+0)`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut wrote = false;
        if !self.re.is_zero() || self.im.is_zero() {
            write!(f, "{}{}", if self.re.is_negative() { "-" } else { "+" }, self.re.abs())?;
            wrote = true;
        }
        if !self.im.is_zero() {
            if self.im.is_negative() {
                write!(f, "-")?;
            } else if !wrote || true {
                write!(f, "+")?;
            }
            write!(f, "{}i", self.im.abs())?;
        }
        write!(f, ")")
    }
}

/// The ambient algebra: number of pairs and which pair indices carry the
/// orthonormal substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordAlgebra {
    pub n: usize,
    pub ortho: BTreeSet<usize>,
}

impl CliffordAlgebra {
    /// All pairs isotropic.
    pub fn standard(n: usize) -> CliffordAlgebra {
        assert!(n >= 1 && n <= 32, "pair count out of range");
        CliffordAlgebra {
            n,
            ortho: BTreeSet::new(),
        }
    }

    pub fn with_ortho(n: usize, ortho: impl IntoIterator<Item = usize>) -> CliffordAlgebra {
        let ortho: BTreeSet<usize> = ortho.into_iter().collect();
        assert!(n >= 1 && n <= 32, "pair count out of range");
        assert!(ortho.iter().all(|&j| j < n), "substituted pair out of range");
        CliffordAlgebra { n, ortho }
    }

    pub fn generators(&self) -> usize {
        2 * self.n
    }

    /// `Q` on generators `a, b` (generator `2j` is `e_j`/`v_j`, `2j+1` is
    /// `f_j`/`w_j`). Values are 0 or 1, so `2Q` stays integral.
    pub fn q_gen(&self, a: u32, b: u32) -> i64 {
        let (pa, pb) = (a / 2, b / 2);
        if pa != pb {
            return 0;
        }
        let ortho = self.ortho.contains(&(pa as usize));
        if a == b {
            ortho as i64
        } else {
            !ortho as i64
        }
    }

    pub fn gen_name(&self, g: u32) -> String {
        let pair = (g / 2) as usize;
        let names = if self.ortho.contains(&pair) {
            ["v", "w"]
        } else {
            ["e", "f"]
        };
        format!("{}{}", names[(g % 2) as usize], pair + 1)
    }
}

/// Exact multivector: ordered-monomial bitmask -> Gaussian-rational
/// coefficient. Monomial order is `e1 < f1 < e2 < f2 < ...` (with `v/w`
/// taking the slot of the substituted pair).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordElement {
    pub algebra: CliffordAlgebra,
    pub terms: BTreeMap<u64, GaussRat>,
}

impl CliffordElement {
    pub fn zero(alg: &CliffordAlgebra) -> CliffordElement {
        CliffordElement {
            algebra: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(alg: &CliffordAlgebra, c: GaussRat) -> CliffordElement {
        let mut el = CliffordElement::zero(alg);
        el.add_term(0, c);
        el
    }

    pub fn one(alg: &CliffordAlgebra) -> CliffordElement {
        CliffordElement::scalar(alg, GaussRat::one())
    }

    pub fn generator(alg: &CliffordAlgebra, g: u32) -> CliffordElement {
        assert!((g as usize) < alg.generators());
        let mut el = CliffordElement::zero(alg);
        el.add_term(1u64 << g, GaussRat::one());
        el
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: u64, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(GaussRat::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add(&self, other: &CliffordElement) -> CliffordElement {
        assert_eq!(self.algebra, other.algebra);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CliffordElement) -> CliffordElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CliffordElement {
        CliffordElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> CliffordElement {
        let mut out = CliffordElement::zero(&self.algebra);
        for (m, t) in &self.terms {
            out.add_term(*m, t.mul(c));
        }
        out
    }

    /// `alpha`: sign `(-1)^r` on each degree-`r` monomial.
    pub fn alpha(&self) -> CliffordElement {
        CliffordElement {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.count_ones() % 2 == 1 { c.neg() } else { c.clone() };
                    (*m, c)
                })
                .collect(),
        }
    }

    /// `star`: `(x_1...x_r)* = (-1)^r x_r...x_1`, re-expanded to canonical
    /// form (reversal can contract `e_j f_j` pairs inside a monomial).
    pub fn star(&self) -> CliffordElement {
        let mut out = CliffordElement::zero(&self.algebra);
        for (m, c) in &self.terms {
            let r = m.count_ones();
            let mut acc: Vec<(u64, i64)> = vec![(0, 1)];
            for g in (0..self.algebra.generators() as u32).rev() {
                if m & (1u64 << g) != 0 {
                    acc = mul_words_gen(&acc, g, &self.algebra);
                }
            }
            let sign = if r % 2 == 1 { -1 } else { 1 };
            for (mono, k) in acc {
                out.add_term(mono, c.scale_int(sign * k));
            }
        }
        out
    }

    /// True when every monomial has even degree.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 0)
    }

    /// True when every monomial is a single generator.
    pub fn is_vector(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() == 1)
    }
}

/// Multiplies a linear combination of monomials by one generator on the
/// right, using `x y = 2Q(x,y) - y x` to restore canonical order and
/// `x x = Q(x,x)` to contract squares. Integer coefficients only.
fn word_times_gen(word: u64, g: u32, alg: &CliffordAlgebra) -> Vec<(u64, i64)> {
    if word == 0 {
        return vec![(1u64 << g, 1)];
    }
    let h = 63 - word.leading_zeros();
    if h < g {
        return vec![(word | (1u64 << g), 1)];
    }
    if h == g {
        let q = alg.q_gen(g, g);
        if q == 0 {
            return Vec::new();
        }
        return vec![(word & !(1u64 << g), q)];
    }
    // word = w' h with h > g: w' (h g) = 2Q(h,g) w' - (w' g) h
    let wp = word & !(1u64 << h);
    let mut out = Vec::new();
    let q2 = 2 * alg.q_gen(h, g);
    if q2 != 0 {
        out.push((wp, q2));
    }
    for (m, c) in word_times_gen(wp, g, alg) {
        out.push((m | (1u64 << h), -c));
    }
    out
}

fn mul_words_gen(acc: &[(u64, i64)], g: u32, alg: &CliffordAlgebra) -> Vec<(u64, i64)> {
    let mut map: BTreeMap<u64, i64> = BTreeMap::new();
    for (w, c) in acc {
        for (m, k) in word_times_gen(*w, g, alg) {
            *map.entry(m).or_insert(0) += c * k;
        }
    }
    map.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// Canonical-form product of two monomials; integer coefficients.
fn mul_monomials(a: u64, b: u64, alg: &CliffordAlgebra) -> Vec<(u64, i64)> {
    let mut acc: Vec<(u64, i64)> = vec![(a, 1)];
    for g in 0..alg.generators() as u32 {
        if b & (1u64 << g) != 0 {
            acc = mul_words_gen(&acc, g, alg);
        }
    }
    acc
}

/// The associative Clifford product.
pub fn cl_mul(a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
    assert_eq!(a.algebra, b.algebra, "rank mismatch");
    let mut out = CliffordElement::zero(&a.algebra);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let c = ca.mul(cb);
            for (m, k) in mul_monomials(*ma, *mb, &a.algebra) {
                out.add_term(m, c.scale_int(k));
            }
        }
    }
    out
}

/// `[a, b] = ab - ba`.
pub fn cl_bracket(a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
    cl_mul(a, b).sub(&cl_mul(b, a))
}

impl fmt::Display for CliffordElement {
    /// Stable debug format: terms in monomial order, each as
    /// `(coeff)·gens`, e.g. `(+3/2+1/2i)·e1f1v3`; the empty monomial prints
    /// as `1`; the zero element prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}\u{b7}")?;
            if *m == 0 {
                write!(f, "1")?;
            } else {
                for g in 0..self.algebra.generators() as u32 {
                    if m & (1u64 << g) != 0 {
                        write!(f, "{}", self.algebra.gen_name(g))?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// An element of `Pin(V)`: `x x* = ±1` and `alpha(x) V x^{-1} ⊆ V`.
/// Even `Ep`s have spinor norm `+1`; odd ones have `-1`, which is why the
/// twisted conjugation below uses `x^{-1} = (x x*) x*` rather than `x*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinElement {
    pub value: CliffordElement,
    /// `x x*`, always `+1` or `-1`.
    pub norm: i64,
}

impl PinElement {
    pub fn new(value: CliffordElement) -> Result<PinElement> {
        let alg = value.algebra.clone();
        let nrm = cl_mul(&value, &value.star());
        let one = CliffordElement::one(&alg);
        let norm = if nrm == one {
            1
        } else if nrm == one.neg() {
            -1
        } else {
            return Err(Error::Invalid(format!("x·x* != ±1 for {value}")));
        };
        let el = PinElement { value, norm };
        for g in 0..alg.generators() as u32 {
            let u = CliffordElement::generator(&alg, g);
            if !el.rho(&u).is_vector() {
                return Err(Error::Invalid(format!(
                    "alpha(x)·V·x^-1 leaves V for {}",
                    el.value
                )));
            }
        }
        Ok(el)
    }

    pub fn is_spin(&self) -> bool {
        self.value.is_even() && self.norm == 1
    }

    /// `rho(x) u = alpha(x) u x^{-1}` on a vector `u`.
    pub fn rho(&self, u: &CliffordElement) -> CliffordElement {
        assert!(u.is_vector());
        cl_mul(&cl_mul(&self.value.alpha(), u), &self.value.star()).scale(&GaussRat::from_int(
            self.norm,
        ))
    }
}

/// `rho(x)u = alpha(x) u x^{-1}` for `x` with `x x* = ±1`, erroring when
/// the result leaves `V` (i.e. `x` was not in `Pin`).
pub fn rho_action(x: &CliffordElement, u: &CliffordElement) -> Result<CliffordElement> {
    if !u.is_vector() {
        return Err(Error::Invalid("rho argument must be a vector".into()));
    }
    let pin = PinElement::new(x.clone())?;
    Ok(pin.rho(u))
}

/// `Q` extended bilinearly to vectors.
pub fn q_form(u: &CliffordElement, w: &CliffordElement) -> GaussRat {
    assert!(u.is_vector() && w.is_vector());
    let alg = &u.algebra;
    let mut out = GaussRat::zero();
    for (mu, cu) in &u.terms {
        for (mw, cw) in &w.terms {
            let gu = mu.trailing_zeros();
            let gw = mw.trailing_zeros();
            let q = alg.q_gen(gu, gw);
            if q != 0 {
                out = out.add(&cu.mul(cw).scale_int(q));
            }
        }
    }
    out
}

/// The Lie algebra `so(2n)` inside the Clifford algebra (isotropic pairs
/// only): `H(e_i) <-> (1 - e_i f_i)/2`, `X(-e_i-e_j) <-> e_i e_j / 2`,
/// `X(-e_i+e_j) <-> -e_i f_j / 2`, `X(e_i+e_j) <-> f_i f_j / 2`, under the
/// identification `e_i <-> u_{-i}`, `f_i <-> u_i` with the matrix model in
/// `orbits::so_matrix`. The sign on the mixed root is forced by that matrix
/// convention: with it, the bracket of Clifford images equals the image of
/// the matrix bracket on the nose (see the homomorphism test).
pub fn lie_element(label: &ChevLabel, alg: &CliffordAlgebra) -> CliffordElement {
    assert!(alg.ortho.is_empty(), "Lie basis needs all pairs isotropic");
    let half = GaussRat::from_rat(rat_frac(1, 2));
    let e = |j: usize| CliffordElement::generator(alg, 2 * j as u32);
    let f = |j: usize| CliffordElement::generator(alg, 2 * j as u32 + 1);
    match label {
        ChevLabel::H(i) => {
            let one = CliffordElement::one(alg);
            one.sub(&cl_mul(&e(*i), &f(*i))).scale(&half)
        }
        ChevLabel::X(root) => {
            let nz: Vec<(usize, i64)> = root
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.doubled() != 0)
                .map(|(i, c)| (i, c.doubled() / 2))
                .collect();
            assert_eq!(nz.len(), 2);
            let ((i, si), (j, sj)) = (nz[0], nz[1]);
            let prod = match (si, sj) {
                (-1, -1) => cl_mul(&e(i), &e(j)),
                (-1, 1) => cl_mul(&e(i), &f(j)).neg(),
                (1, -1) => cl_mul(&e(j), &f(i)).neg(),
                (1, 1) => cl_mul(&f(i), &f(j)),
                _ => unreachable!(),
            };
            prod.scale(&half)
        }
    }
}

/// The full map `{H, X} -> C(V)` of the correspondence.
pub fn lie_basis(n: usize) -> Vec<(ChevLabel, CliffordElement)> {
    let alg = CliffordAlgebra::standard(n);
    crate::orbits::chevalley_basis(n)
        .into_iter()
        .map(|l| {
            let el = lie_element(&l, &alg);
            (l, el)
        })
        .collect()
}

/// One odd Jordan block in a Clifford realization: `k` isotropic pairs and
/// one orthonormal generator (`v` or `w` of the shared substituted pair).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddBlock {
    pub size: u32,
    pub pairs: Vec<usize>,
    /// Generator index of the block's `v`/`w`.
    pub ortho_gen: u32,
}

/// `Ep_{2k+1} = i^k v prod_j (1 - e_j f_j)` over the block's isotropic
/// pairs.
pub fn epsilon_odd(block: &OddBlock, alg: &CliffordAlgebra) -> CliffordElement {
    let k = block.pairs.len() as u32;
    let mut out = CliffordElement::generator(alg, block.ortho_gen)
        .scale(&GaussRat::one().times_i_pow(k));
    for &j in &block.pairs {
        let e = CliffordElement::generator(alg, 2 * j as u32);
        let f = CliffordElement::generator(alg, 2 * j as u32 + 1);
        let factor = CliffordElement::one(alg).sub(&cl_mul(&e, &f));
        out = cl_mul(&out, &factor);
    }
    out
}

/// `Ep_{2n} = i^n prod_{j=1..n} (1 - e_j f_j)`, covering `-I` in `SO(V)`.
pub fn epsilon_2n(alg: &CliffordAlgebra) -> CliffordElement {
    assert!(alg.ortho.is_empty());
    let mut out = CliffordElement::scalar(alg, GaussRat::one().times_i_pow(alg.n as u32));
    for j in 0..alg.n {
        let e = CliffordElement::generator(alg, 2 * j as u32);
        let f = CliffordElement::generator(alg, 2 * j as u32 + 1);
        let factor = CliffordElement::one(alg).sub(&cl_mul(&e, &f));
        out = cl_mul(&out, &factor);
    }
    out
}

/// A Clifford-model realization of a nilpotent orbit representative: the
/// element `e`, the block structure, and the odd blocks carrying `Ep`s.
#[derive(Debug, Clone)]
pub struct OrbitRealization {
    pub algebra: CliffordAlgebra,
    pub e: CliffordElement,
    pub odd_blocks: Vec<OddBlock>,
}

/// Builds the block realization: pairs of equal even sizes (and pairs of
/// equal odd sizes) as chained `e_{i+1} f_i` blocks; each remaining pair of
/// distinct odd sizes as two `v`/`w` blocks sharing one substituted pair;
/// the very even `II` orbit flips the last chain term to `f_l f_{l-1}`.
pub fn realize_orbit(label: &OrbitLabel, n: usize) -> Result<OrbitRealization> {
    if crate::orbits::classify(label, n).is_empty() {
        return Err(Error::UnsupportedOrbit(label.to_string()));
    }
    let odd: Vec<u32> = label.parts().iter().copied().filter(|p| p % 2 == 1).collect();
    let even: Vec<u32> = label.parts().iter().copied().filter(|p| p % 2 == 0).collect();
    assert!(odd.len() % 2 == 0 && even.len() % 2 == 0);

    // first pass: which pairs are substituted
    let mut ortho_pairs: Vec<usize> = Vec::new();
    let mut cursor = 0usize;
    for ab in odd.chunks(2) {
        let (a, b) = (ab[0], ab[1]);
        if a != b {
            let (ka, kb) = ((a / 2) as usize, (b / 2) as usize);
            cursor += ka + kb;
            ortho_pairs.push(cursor);
            cursor += 1;
        } else {
            cursor += a as usize;
        }
    }
    let alg = CliffordAlgebra::with_ortho(n, ortho_pairs);

    let half = GaussRat::from_rat(rat_frac(1, 2));
    let mut e = CliffordElement::zero(&alg);
    let mut odd_blocks = Vec::new();
    let gen = |g: u32| CliffordElement::generator(&alg, g);
    // chain realization (sum e_{q_{i+1}} f_{q_i}) / 2 over consecutive pairs
    let chain = |pairs: &[usize], alg: &CliffordAlgebra| {
        let mut acc = CliffordElement::zero(alg);
        for w in pairs.windows(2) {
            let term = cl_mul(
                &CliffordElement::generator(alg, 2 * w[1] as u32),
                &CliffordElement::generator(alg, 2 * w[0] as u32 + 1),
            );
            acc = acc.add(&term);
        }
        acc
    };

    let mut cursor = 0usize;
    for ab in odd.chunks(2) {
        let (a, b) = (ab[0], ab[1]);
        if a != b {
            // two v/w blocks around one substituted pair:
            // (sum e_{i+1} f_i + v f_k) / 2 and the w analogue
            let ka = (a / 2) as usize;
            let kb = (b / 2) as usize;
            let pairs_a: Vec<usize> = (cursor..cursor + ka).collect();
            let pairs_b: Vec<usize> = (cursor + ka..cursor + ka + kb).collect();
            let subst = cursor + ka + kb;
            let v = 2 * subst as u32;
            let w = v + 1;
            for (pairs, og) in [(pairs_a, v), (pairs_b, w)] {
                e = e.add(&chain(&pairs, &alg));
                if let Some(&last) = pairs.last() {
                    e = e.add(&cl_mul(&gen(og), &gen(2 * last as u32 + 1)));
                }
                odd_blocks.push(OddBlock {
                    size: 2 * pairs.len() as u32 + 1,
                    pairs,
                    ortho_gen: og,
                });
            }
            cursor = subst + 1;
        } else {
            // equal odd sizes: realized like an even pair of blocks
            let pairs: Vec<usize> = (cursor..cursor + a as usize).collect();
            e = e.add(&chain(&pairs, &alg));
            cursor += a as usize;
        }
    }
    let mut even_chunks = even.chunks(2).peekable();
    while let Some(ab) = even_chunks.next() {
        let l = ab[0] as usize;
        assert_eq!(ab[0], ab[1], "even parts pair up");
        let pairs: Vec<usize> = (cursor..cursor + l).collect();
        let last_chunk = even_chunks.peek().is_none();
        if label.tag() == Some(Tag::II) && last_chunk {
            // replace the last chain term e_l f_{l-1} by f_l f_{l-1}
            e = e.add(&chain(&pairs[..l], &alg).sub(&cl_mul(
                &gen(2 * pairs[l - 1] as u32),
                &gen(2 * pairs[l - 2] as u32 + 1),
            )));
            e = e.add(&cl_mul(
                &gen(2 * pairs[l - 1] as u32 + 1),
                &gen(2 * pairs[l - 2] as u32 + 1),
            ));
        } else {
            e = e.add(&chain(&pairs, &alg));
        }
        cursor += l;
    }
    assert_eq!(cursor, n, "block allocation must use every pair once");
    Ok(OrbitRealization {
        algebra: alg,
        e: e.scale(&half),
        odd_blocks,
    })
}

/// Verified commutation data for a pair of disjoint odd blocks:
/// `Ep_a Ep_b = -Ep_b Ep_a` and `Ep^2 = (-1)^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpRelations {
    pub anticommute: bool,
    pub square_a: i64,
    pub square_b: i64,
}

/// Builds `Ep_{2k+1}`, `Ep_{2l+1}` on disjoint blocks sharing one
/// substituted pair and verifies the sign rules by direct multiplication.
pub fn ep_commutation(k: usize, l: usize) -> EpRelations {
    let n = k + l + 1;
    let alg = CliffordAlgebra::with_ortho(n, [k + l]);
    let block_a = OddBlock {
        size: 2 * k as u32 + 1,
        pairs: (0..k).collect(),
        ortho_gen: 2 * (k + l) as u32,
    };
    let block_b = OddBlock {
        size: 2 * l as u32 + 1,
        pairs: (k..k + l).collect(),
        ortho_gen: 2 * (k + l) as u32 + 1,
    };
    let ea = epsilon_odd(&block_a, &alg);
    let eb = epsilon_odd(&block_b, &alg);
    let anticommute = cl_mul(&ea, &eb).add(&cl_mul(&eb, &ea)).is_zero();
    let sq = |x: &CliffordElement| -> i64 {
        let s = cl_mul(x, x);
        let plus = CliffordElement::one(&alg);
        if s == plus {
            1
        } else if s == plus.neg() {
            -1
        } else {
            panic!("Ep^2 is not ±1: {s}");
        }
    };
    EpRelations {
        anticommute,
        square_a: sq(&ea),
        square_b: sq(&eb),
    }
}

/// Endpoint evaluation of the path
/// `prod_j [cos(theta/2) + i sin(theta/2) (1 - e_j f_j)]` over `2k+1`
/// pairs realizing two equal odd blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaPathReport {
    pub at_zero_is_identity: bool,
    pub at_2pi_is_minus_identity: bool,
    pub endpoints_commute_with_e: bool,
}

pub fn theta_path_check(k: usize) -> ThetaPathReport {
    let n = 2 * k + 1;
    let alg = CliffordAlgebra::standard(n);
    // two equal blocks of size 2k+1 realized as one chain over all pairs
    let half = GaussRat::from_rat(rat_frac(1, 2));
    let mut e = CliffordElement::zero(&alg);
    for j in 0..n - 1 {
        e = e.add(&cl_mul(
            &CliffordElement::generator(&alg, 2 * (j + 1) as u32),
            &CliffordElement::generator(&alg, 2 * j as u32 + 1),
        ));
    }
    let e = e.scale(&half);
    // cos/sin at theta = 0 and 2 pi are exact: (1, 0) and (-1, 0)
    let endpoint = |cos_half: i64| {
        let mut acc = CliffordElement::one(&alg);
        for j in 0..n {
            let ef = cl_mul(
                &CliffordElement::generator(&alg, 2 * j as u32),
                &CliffordElement::generator(&alg, 2 * j as u32 + 1),
            );
            // cos(theta/2) + i sin(theta/2)(1 - e_j f_j); sin term vanishes
            // at both endpoints
            let factor = CliffordElement::scalar(&alg, GaussRat::from_int(cos_half))
                .add(&CliffordElement::one(&alg).sub(&ef).scale(&GaussRat::zero()));
            acc = cl_mul(&acc, &factor);
        }
        acc
    };
    let at0 = endpoint(1);
    let at2pi = endpoint(-1);
    let one = CliffordElement::one(&alg);
    ThetaPathReport {
        at_zero_is_identity: at0 == one,
        at_2pi_is_minus_identity: at2pi == one.neg(),
        endpoints_commute_with_e: cl_bracket(&at0, &e).is_zero()
            && cl_bracket(&at2pi, &e).is_zero(),
    }
}

/// The finite subgroup of `Spin(V)` generated by `-I` and even products of
/// the blockwise `Ep`s, computed by explicit Clifford multiplication, with
/// the induced component-group type.
#[derive(Debug, Clone)]
pub struct ComponentGroupTable {
    pub element_names: Vec<String>,
    /// `products[i][j]` = index of element `i * j`.
    pub products: Vec<Vec<usize>>,
    pub order: u64,
    /// Isomorphism type after factoring `-I` into the identity component
    /// when some odd size repeats.
    pub component_group: GroupType,
    pub all_commute_with_e: bool,
    pub all_in_spin: bool,
}

/// Builds the executable component-group table for a small orbit.
pub fn component_group_table(label: &OrbitLabel, n: usize) -> Result<ComponentGroupTable> {
    let real = realize_orbit(label, n)?;
    let alg = &real.algebra;
    let eps: Vec<(String, CliffordElement)> = real
        .odd_blocks
        .iter()
        .map(|b| (format!("Ep{}", b.size), epsilon_odd(b, alg)))
        .collect();

    // signed even products of the Eps (largest block printed first)
    let mut elements: Vec<(String, CliffordElement)> = Vec::new();
    let m = eps.len();
    for subset in 0..(1u32 << m) {
        if subset.count_ones() % 2 != 0 {
            continue;
        }
        let mut prod = CliffordElement::one(alg);
        let mut name_parts: Vec<String> = Vec::new();
        for (b, ep) in eps.iter().enumerate() {
            if subset & (1 << b) != 0 {
                prod = cl_mul(&prod, &ep.1);
                name_parts.push(ep.0.clone());
            }
        }
        let base = if name_parts.is_empty() {
            "I".to_string()
        } else {
            name_parts.join("*")
        };
        for (sign, signed) in [("", prod.clone()), ("-", prod.neg())] {
            if !elements.iter().any(|(_, el)| *el == signed) {
                elements.push((format!("{sign}{base}"), signed));
            }
        }
    }

    let order = elements.len() as u64;
    assert!(order.is_power_of_two());
    let products: Vec<Vec<usize>> = elements
        .iter()
        .map(|(_, a)| {
            elements
                .iter()
                .map(|(_, b)| {
                    let p = cl_mul(a, b);
                    elements
                        .iter()
                        .position(|(_, el)| *el == p)
                        .expect("product must stay in the group")
                })
                .collect()
        })
        .collect();

    let all_commute_with_e = elements
        .iter()
        .all(|(_, el)| cl_bracket(el, &real.e).is_zero());
    let all_in_spin = elements
        .iter()
        .all(|(_, el)| el.is_even() && PinElement::new(el.clone()).is_ok());

    // every element here squares to the identity, so the group and all of
    // its quotients are elementary abelian
    for (i, row) in products.iter().enumerate() {
        assert_eq!(row[i], 0, "element {} must square to I", elements[i].0);
        for (j, &p) in row.iter().enumerate() {
            assert_eq!(p, products[j][i], "group must be abelian");
        }
    }

    let some_odd_repeated = label
        .multiplicities()
        .iter()
        .any(|(p, m)| p % 2 == 1 && *m > 1);
    let quotient_order = if some_odd_repeated { order / 2 } else { order };
    let component_group = GroupType {
        exponent2_rank: quotient_order.trailing_zeros(),
    };

    Ok(ComponentGroupTable {
        element_names: elements.into_iter().map(|(s, _)| s).collect(),
        products,
        order,
        component_group,
        all_commute_with_e,
        all_in_spin,
    })
}

/// Decomposes a `2n x 2n` matrix of `so(2n)` over the Chevalley basis.
pub fn matrix_to_chev(m: &[Vec<i64>], n: usize) -> Vec<(i64, ChevLabel)> {
    let mut out = Vec::new();
    for i in 0..n {
        if m[i][i] != 0 {
            out.push((m[i][i], ChevLabel::H(i)));
        }
        for j in 0..n {
            if i != j && m[i][j] != 0 {
                out.push((m[i][j], ChevLabel::X(crate::orbits::root_minus(i, j, n))));
            }
        }
        for j in (i + 1)..n {
            if m[i][n + j] != 0 {
                out.push((m[i][n + j], ChevLabel::X(crate::orbits::root_plus(i, j, 1, n))));
            }
            if m[n + i][j] != 0 {
                out.push((m[n + i][j], ChevLabel::X(crate::orbits::root_plus(i, j, -1, n))));
            }
        }
    }
    out
}

/// Weight pairing `<alpha, h>` used in the `ad`-eigenvalue tests.
pub fn root_eval(root: &Weight, h: &Weight) -> i64 {
    root.dot4(h) / 4
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::{chevalley_basis, commutator, so_matrix};

    fn std_alg(n: usize) -> CliffordAlgebra {
        CliffordAlgebra::standard(n)
    }

    fn e(alg: &CliffordAlgebra, j: usize) -> CliffordElement {
        CliffordElement::generator(alg, 2 * j as u32)
    }

    fn f(alg: &CliffordAlgebra, j: usize) -> CliffordElement {
        CliffordElement::generator(alg, 2 * j as u32 + 1)
    }

    #[test]
    fn basic_relations() {
        let alg = std_alg(2);
        let two = CliffordElement::scalar(&alg, GaussRat::from_int(2));
        assert_eq!(
            cl_mul(&e(&alg, 0), &f(&alg, 0)).add(&cl_mul(&f(&alg, 0), &e(&alg, 0))),
            two
        );
        assert!(cl_mul(&e(&alg, 0), &e(&alg, 0)).is_zero());
        let oalg = CliffordAlgebra::with_ortho(2, [1]);
        let v = CliffordElement::generator(&oalg, 2);
        assert_eq!(cl_mul(&v, &v), CliffordElement::one(&oalg));
    }

    #[test]
    fn star_and_alpha() {
        let alg = std_alg(2);
        let x = cl_mul(&e(&alg, 0), &f(&alg, 1));
        // star(e1 f2) = f2 e1 = -e1 f2 (distinct pairs anticommute)
        assert_eq!(x.star(), x.neg());
        assert_eq!(x.star().star(), x);
        assert_eq!(e(&alg, 0).alpha(), e(&alg, 0).neg());
        assert_eq!(CliffordElement::one(&alg).star(), CliffordElement::one(&alg));
        // star(e1 f1) = f1 e1 = 2 - e1 f1
        let ef = cl_mul(&e(&alg, 0), &f(&alg, 0));
        let two = CliffordElement::scalar(&alg, GaussRat::from_int(2));
        assert_eq!(ef.star(), two.sub(&ef));
    }

    #[test]
    fn star_antihomomorphism_random() {
        // deterministic pseudo-random sparse triples
        let alg = std_alg(3);
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..200 {
            let mut a = CliffordElement::zero(&alg);
            let mut b = CliffordElement::zero(&alg);
            let mut c = CliffordElement::zero(&alg);
            for x in [&mut a, &mut b, &mut c] {
                for _ in 0..3 {
                    let mono = next() & ((1 << 6) - 1);
                    let re = (next() % 7) as i64 - 3;
                    let im = (next() % 7) as i64 - 3;
                    x.add_term(
                        mono,
                        GaussRat {
                            re: rat(re),
                            im: rat(im),
                        },
                    );
                }
            }
            // associativity and the star anti-homomorphism law
            assert_eq!(cl_mul(&cl_mul(&a, &b), &c), cl_mul(&a, &cl_mul(&b, &c)));
            assert_eq!(cl_mul(&a, &b).star(), cl_mul(&b.star(), &a.star()));
        }
    }

    #[test]
    fn lie_basis_properties() {
        for n in 2..=3 {
            for (_, el) in lie_basis(n) {
                assert!(el.add(&el.star()).is_zero());
                assert_eq!(el.alpha(), el);
            }
        }
    }

    #[test]
    fn lie_correspondence_is_homomorphism() {
        // Clifford bracket of images equals image of the matrix bracket
        for n in 2..=4 {
            let alg = std_alg(n);
            let basis = chevalley_basis(n);
            for a in &basis {
                for b in &basis {
                    let br = cl_bracket(&lie_element(a, &alg), &lie_element(b, &alg));
                    let mat = commutator(&so_matrix(a, n), &so_matrix(b, n));
                    let mut expect = CliffordElement::zero(&alg);
                    for (c, l) in matrix_to_chev(&mat, n) {
                        expect = expect.add(&lie_element(&l, &alg).scale(&GaussRat::from_int(c)));
                    }
                    assert_eq!(br, expect, "[{a}, {b}] at n={n}");
                }
            }
        }
    }

    #[test]
    fn cartan_eigenvalue() {
        let alg = std_alg(4);
        let h1 = lie_element(&ChevLabel::H(0), &alg);
        let root = crate::orbits::root_plus(0, 1, 1, 4);
        let x = lie_element(&ChevLabel::X(root.clone()), &alg);
        // [H(e_1), X(e_1 + e_2)] = X(e_1 + e_2)
        assert_eq!(cl_bracket(&h1, &x), x);
        assert_eq!(root_eval(&root, &Weight::integral(&[1, 0, 0, 0])), 1);
    }

    #[test]
    fn epsilon_squares_and_anticommutation() {
        for k in 0..=2 {
            for l in 0..=2 {
                if k == l {
                    continue;
                }
                let rel = ep_commutation(k, l);
                assert!(rel.anticommute, "k={k} l={l}");
                assert_eq!(rel.square_a, if k % 2 == 0 { 1 } else { -1 });
                assert_eq!(rel.square_b, if l % 2 == 0 { 1 } else { -1 });
            }
        }
    }

    #[test]
    fn epsilon_2n_covers_minus_identity() {
        for n in 2..=4 {
            let alg = std_alg(n);
            let ep = epsilon_2n(&alg);
            let sq = cl_mul(&ep, &ep);
            let one = CliffordElement::one(&alg);
            if n % 2 == 0 {
                assert_eq!(sq, one);
            } else {
                assert_eq!(sq, one.neg());
            }
            let pin = PinElement::new(ep).unwrap();
            assert!(pin.is_spin());
            for g in 0..alg.generators() as u32 {
                let u = CliffordElement::generator(&alg, g);
                assert_eq!(pin.rho(&u), u.neg(), "n={n} g={g}");
            }
        }
    }

    #[test]
    fn rho_of_ep3_is_block_reflection() {
        // [3,2,2,1] at n=4: Ep3 = i·v2(1 - e1 f1) acts by -Id on
        // span{e1, f1, v2} and +Id on the rest
        let real = realize_orbit(&"3,2,2,1".parse().unwrap(), 4).unwrap();
        let alg = &real.algebra;
        let block3 = real.odd_blocks.iter().find(|b| b.size == 3).unwrap();
        let ep3 = epsilon_odd(block3, alg);
        let pin = PinElement::new(ep3).unwrap();
        let in_block: Vec<u32> = vec![0, 1, block3.ortho_gen];
        for g in 0..alg.generators() as u32 {
            let u = CliffordElement::generator(alg, g);
            let img = pin.rho(&u);
            if in_block.contains(&g) {
                assert_eq!(img, u.neg(), "g={g}");
            } else {
                assert_eq!(img, u, "g={g}");
            }
        }
    }

    #[test]
    fn rho_preserves_q() {
        let real = realize_orbit(&"3,2,2,1".parse().unwrap(), 4).unwrap();
        let alg = &real.algebra;
        for block in &real.odd_blocks {
            let x = epsilon_odd(block, alg);
            for g1 in 0..alg.generators() as u32 {
                for g2 in 0..alg.generators() as u32 {
                    let u1 = CliffordElement::generator(alg, g1);
                    let u2 = CliffordElement::generator(alg, g2);
                    let r1 = rho_action(&x, &u1).unwrap();
                    let r2 = rho_action(&x, &u2).unwrap();
                    assert_eq!(q_form(&r1, &r2), q_form(&u1, &u2));
                }
            }
        }
    }

    #[test]
    fn theta_path_endpoints() {
        for k in 0..=2 {
            let rep = theta_path_check(k);
            assert!(rep.at_zero_is_identity);
            assert!(rep.at_2pi_is_minus_identity);
            assert!(rep.endpoints_commute_with_e);
        }
    }

    #[test]
    fn component_group_tables_match_descriptors() {
        use crate::orbits::{component_group, enumerate_small_orbits, Ambient};
        for n in 2..=5 {
            for orbit in enumerate_small_orbits(n).unwrap() {
                let table = component_group_table(&orbit.label, n).unwrap();
                assert!(table.all_commute_with_e, "{} n={n}", orbit.label);
                assert!(table.all_in_spin, "{} n={n}", orbit.label);
                let desc = component_group(&orbit.label, Ambient::Spin);
                assert_eq!(
                    table.component_group, desc.group_type,
                    "{} n={n}",
                    orbit.label
                );
            }
        }
    }

    #[test]
    fn case1_table_is_klein_four() {
        let table = component_group_table(&"3,2,2,1".parse().unwrap(), 4).unwrap();
        assert_eq!(table.order, 4);
        assert_eq!(table.component_group.to_string(), "Z2xZ2");
        assert!(table.element_names.contains(&"Ep3*Ep1".to_string()));
        assert!(table.element_names.contains(&"-I".to_string()));
    }

    #[test]
    fn display_format() {
        let alg = CliffordAlgebra::with_ortho(3, [2]);
        let mut x = CliffordElement::zero(&alg);
        x.add_term(
            0b01_0011,
            GaussRat {
                re: rat_frac(3, 2),
                im: rat_frac(1, 2),
            },
        );
        assert_eq!(x.to_string(), "(+3/2+1/2i)\u{b7}e1f1v3");
        assert_eq!(CliffordElement::zero(&alg).to_string(), "0");
        assert_eq!(CliffordElement::one(&alg).to_string(), "(+1)\u{b7}1");
    }
}
