//! Closed-form K-type spectra for the small orbits: the regular-function
//! families R(O, psi), the unipotent K-structures Xi, the executable
//! BGG/Pieri fixed-vector derivation, and the matchup verifier.

use std::collections::BTreeSet;

use crate::orbits::{classify, component_group, Ambient, CaseId, OrbitLabel, Tag};
use crate::rootsys::{helgason_sp_fixed, pieri_tensor, tensor_decompose, LeviWeight, RootSystemD};
use crate::weight::{Half, Parity, Weight};
use crate::{Error, Result};

/// Integrality class of a spectrum family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrality {
    Integral,
    HalfIntegral,
}

impl Integrality {
    fn parity(self) -> Parity {
        match self {
            Integrality::Integral => Parity::Integral,
            Integrality::HalfIntegral => Parity::HalfIntegral,
        }
    }
}

/// A character of the component group A_K(O) for K = Spin, in the paper's
/// labeling: psi_1..psi_4 (Cases 1, 2) or Triv/Sgn (Cases 3, 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiIndex {
    Psi(u8),
    Triv,
    Sgn,
}

impl std::fmt::Display for PsiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PsiIndex::Psi(i) => write!(f, "psi{i}"),
            PsiIndex::Triv => write!(f, "Triv"),
            PsiIndex::Sgn => write!(f, "Sgn"),
        }
    }
}

/// An orbit together with one of its component-group characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterLabel {
    pub orbit: OrbitLabel,
    pub psi: PsiIndex,
}

/// Finite symbolic description of an infinite multiplicity-free set of
/// dominant highest weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumFamily {
    pub n: usize,
    pub integrality: Integrality,
    /// Required value of (sum a_i) mod 2; `None` when unconstrained.
    pub sum_parity: Option<u8>,
    /// Number of forced trailing zero coordinates.
    pub zero_tail: usize,
    /// Pairing pattern a_1 = a_2, a_3 = a_4, ... on the non-tail coords.
    pub pairing: bool,
    /// With `pairing`, flips the last pair to a_{n-1} = -a_n.
    pub last_sign_flip: bool,
}

impl SpectrumFamily {
    /// Decides membership of a dominant weight.
    pub fn contains(&self, w: &Weight) -> bool {
        if w.rank() != self.n || !w.is_dominant() {
            return false;
        }
        if w.parity() != self.integrality.parity() {
            // the zero weight reports as integral; a half-integral family
            // never contains it, so this is the right rejection
            return false;
        }
        let m = self.n - self.zero_tail;
        if w.coords()[m..].iter().any(|c| *c != Half::ZERO) {
            return false;
        }
        if self.pairing {
            debug_assert!(m % 2 == 0);
            for i in (0..m).step_by(2) {
                let (a, b) = (w.coord(i), w.coord(i + 1));
                let flip_here = self.last_sign_flip && i + 2 == self.n;
                if flip_here {
                    if a != -b {
                        return false;
                    }
                } else if a != b {
                    return false;
                }
            }
        }
        if let Some(par) = self.sum_parity {
            let sum = w.coord_sum();
            if !sum.is_integer() {
                return false;
            }
            if sum.to_int().rem_euclid(2) as u8 != par {
                return false;
            }
        }
        true
    }
}

fn primary_case(orbit: &OrbitLabel, n: usize) -> Result<CaseId> {
    let cases = classify(orbit, n);
    if cases.is_empty() {
        return Err(Error::UnsupportedOrbit(orbit.to_string()));
    }
    Ok(cases[0])
}

/// The characters of A_K(O) (K = Spin) in the paper's order.
pub fn characters_of(orbit: &OrbitLabel, n: usize) -> Result<Vec<CharacterLabel>> {
    let case = primary_case(orbit, n)?;
    let psis: Vec<PsiIndex> = match case {
        CaseId::Case1 => (1..=4).map(PsiIndex::Psi).collect(),
        CaseId::Case2 { .. } => vec![PsiIndex::Psi(1), PsiIndex::Psi(2)],
        CaseId::Case3 => vec![PsiIndex::Triv, PsiIndex::Sgn],
        CaseId::Case4 { .. } => vec![PsiIndex::Triv],
    };
    let order = component_group(orbit, Ambient::Spin).group_type.order();
    assert_eq!(psis.len() as u64, order, "psi count must be |A_K(O)|");
    Ok(psis
        .into_iter()
        .map(|psi| CharacterLabel {
            orbit: orbit.clone(),
            psi,
        })
        .collect())
}

/// The family R(O, psi) of the regular-function decomposition.
pub fn regular_section_family(
    orbit: &OrbitLabel,
    n: usize,
    psi: PsiIndex,
) -> Result<SpectrumFamily> {
    let case = primary_case(orbit, n)?;
    let fam = match (case, psi) {
        (CaseId::Case1, PsiIndex::Psi(i @ 1..=4)) => {
            let p = (n / 2) as u8;
            let (integrality, par) = match i {
                1 => (Integrality::Integral, 0),
                2 => (Integrality::Integral, 1),
                3 => (Integrality::HalfIntegral, p % 2),
                _ => (Integrality::HalfIntegral, (p + 1) % 2),
            };
            SpectrumFamily {
                n,
                integrality,
                sum_parity: Some(par),
                zero_tail: 0,
                pairing: false,
                last_sign_flip: false,
            }
        }
        (CaseId::Case2 { k }, PsiIndex::Psi(i @ (1 | 2))) => SpectrumFamily {
            n,
            integrality: Integrality::Integral,
            sum_parity: Some(i - 1),
            zero_tail: n - (2 * k + 2),
            pairing: false,
            last_sign_flip: false,
        },
        (CaseId::Case3, PsiIndex::Triv | PsiIndex::Sgn) => SpectrumFamily {
            n,
            integrality: if psi == PsiIndex::Triv {
                Integrality::Integral
            } else {
                Integrality::HalfIntegral
            },
            sum_parity: None,
            zero_tail: 0,
            pairing: true,
            last_sign_flip: orbit.tag() == Some(Tag::II),
        },
        (CaseId::Case4 { k }, PsiIndex::Triv) => SpectrumFamily {
            n,
            integrality: Integrality::Integral,
            sum_parity: None,
            zero_tail: n - 2 * k,
            pairing: true,
            last_sign_flip: false,
        },
        _ => {
            return Err(Error::Invalid(format!(
                "character {psi} is not defined for {orbit}"
            )))
        }
    };
    Ok(fam)
}

/// The unipotent modules attached to the orbit with their K-structure
/// families, in the paper's order and naming.
pub fn unipotent_modules(orbit: &OrbitLabel, n: usize) -> Result<Vec<(String, SpectrumFamily)>> {
    let case = primary_case(orbit, n)?;
    let out = match case {
        CaseId::Case1 => {
            // X-bar(rho/2, -w_i rho/2): integral with even/odd sum, then
            // half-integral with sum in 2Z+p and 2Z+p+1
            let p = (n / 2) as u8;
            let mk = |integrality, par| SpectrumFamily {
                n,
                integrality,
                sum_parity: Some(par),
                zero_tail: 0,
                pairing: false,
                last_sign_flip: false,
            };
            vec![
                ("Xi1".to_string(), mk(Integrality::Integral, 0)),
                ("Xi2".to_string(), mk(Integrality::Integral, 1)),
                ("Xi3".to_string(), mk(Integrality::HalfIntegral, p % 2)),
                ("Xi4".to_string(), mk(Integrality::HalfIntegral, (p + 1) % 2)),
            ]
        }
        CaseId::Case2 { k } => {
            // X-bar(la_O, -w_i la_O): 2k+2 free slots, even/odd sum
            let mk = |par| SpectrumFamily {
                n,
                integrality: Integrality::Integral,
                sum_parity: Some(par),
                zero_tail: n - (2 * k + 2),
                pairing: false,
                last_sign_flip: false,
            };
            vec![("Xi1".to_string(), mk(0)), ("Xi2".to_string(), mk(1))]
        }
        CaseId::Case3 => {
            // Xi from Triv on GL(n), Xi' from Det^{1/2}
            let mk = |integrality| SpectrumFamily {
                n,
                integrality,
                sum_parity: None,
                zero_tail: 0,
                pairing: true,
                last_sign_flip: orbit.tag() == Some(Tag::II),
            };
            vec![
                ("Xi".to_string(), mk(Integrality::Integral)),
                ("Xi'".to_string(), mk(Integrality::HalfIntegral)),
            ]
        }
        CaseId::Case4 { k } => vec![(
            "Xi".to_string(),
            SpectrumFamily {
                n,
                integrality: Integrality::Integral,
                sum_parity: None,
                zero_tail: n - 2 * k,
                pairing: true,
                last_sign_flip: false,
            },
        )],
    };
    Ok(out)
}

/// One unipotent module by position in `unipotent_modules`.
pub fn unipotent_family(orbit: &OrbitLabel, n: usize, xi_index: usize) -> Result<SpectrumFamily> {
    let all = unipotent_modules(orbit, n)?;
    all.into_iter()
        .nth(xi_index)
        .map(|(_, f)| f)
        .ok_or_else(|| Error::Invalid(format!("no unipotent module #{xi_index} for {orbit}")))
}

/// Enumeration cutoff: either on `sum |a_i|` or on `a_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cutoff {
    SumAbs(i64),
    MaxA1(i64),
}

/// All dominant weights of the given integrality within the cutoff.
pub fn dominant_weights(n: usize, integrality: Integrality, cutoff: Cutoff) -> Vec<Weight> {
    // doubled coordinates d_1 >= ... >= d_{n-1} >= |d_n|, uniform parity
    let res = match integrality {
        Integrality::Integral => 0,
        Integrality::HalfIntegral => 1,
    };
    let mut out = Vec::new();
    let mut coords = vec![0i64; n];
    let (budget, cap_first) = match cutoff {
        Cutoff::SumAbs(c) => (2 * c.max(0), i64::MAX),
        Cutoff::MaxA1(c) => (i64::MAX, 2 * c.max(0)),
    };
    fn rec(
        pos: usize,
        n: usize,
        prev: i64,
        budget: i64,
        res: i64,
        coords: &mut Vec<i64>,
        out: &mut Vec<Weight>,
    ) {
        if pos == n {
            out.push(Weight::new(coords.iter().map(|d| Half::from_halves(*d)).collect()).unwrap());
            return;
        }
        // remaining coords each cost at least `res`
        let slots_after = (n - pos - 1) as i64;
        let mut d = res;
        while d <= prev && d + res * slots_after <= budget {
            coords[pos] = d;
            if pos + 1 == n && d > 0 {
                // last coordinate may flip sign
                rec(pos + 1, n, d, budget - d, res, coords, out);
                coords[pos] = -d;
            }
            rec(pos + 1, n, d, budget - d, res, coords, out);
            d += 2;
        }
    }
    let first_cap = budget.min(cap_first);
    rec(0, n, first_cap, budget, res, &mut coords, &mut out);
    out.sort();
    out.dedup();
    out
}

/// All weights of the family within the cutoff, sorted, each once.
pub fn enumerate_family(f: &SpectrumFamily, cutoff: Cutoff) -> Vec<Weight> {
    dominant_weights(f.n, f.integrality, cutoff)
        .into_iter()
        .filter(|w| f.contains(w))
        .collect()
}

/// Membership in the connected-centralizer spectrum
/// Ind_{C_K(O)^0}^K(Triv) — the union the psi-families must partition.
pub fn connected_spectrum_contains(orbit: &OrbitLabel, n: usize, w: &Weight) -> Result<bool> {
    let case = primary_case(orbit, n)?;
    if w.rank() != n || !w.is_dominant() {
        return Ok(false);
    }
    Ok(match case {
        CaseId::Case1 => true,
        CaseId::Case2 { k } => {
            w.parity() == Parity::Integral
                && w.coords()[2 * k + 2..].iter().all(|c| *c == Half::ZERO)
        }
        CaseId::Case3 => {
            let flip = orbit.tag() == Some(Tag::II);
            (0..n).step_by(2).all(|i| {
                if flip && i + 2 == n {
                    w.coord(i) == -w.coord(i + 1)
                } else {
                    w.coord(i) == w.coord(i + 1)
                }
            })
        }
        CaseId::Case4 { k } => {
            w.parity() == Parity::Integral
                && w.coords()[2 * k..].iter().all(|c| *c == Half::ZERO)
                && (0..2 * k).step_by(2).all(|i| w.coord(i) == w.coord(i + 1))
        }
    })
}

/// Outcome of matching one psi-family against its unipotent partner.
#[derive(Debug, Clone)]
pub struct MatchupPair {
    pub psi: String,
    pub xi: String,
    pub count: usize,
    pub matched: bool,
    pub only_psi: Vec<Weight>,
    pub only_xi: Vec<Weight>,
}

#[derive(Debug, Clone)]
pub struct MatchupReport {
    pub orbit: OrbitLabel,
    pub n: usize,
    pub cutoff: Cutoff,
    pub pairs: Vec<MatchupPair>,
    pub families_disjoint: bool,
    pub union_is_connected_spectrum: bool,
}

impl MatchupReport {
    pub fn ok(&self) -> bool {
        self.pairs.iter().all(|p| p.matched)
            && self.families_disjoint
            && self.union_is_connected_spectrum
    }
}

/// Verifies the matchup psi <-> Xi for one orbit up to a cutoff: each
/// psi-family equals its partner exactly, the psi-families are pairwise
/// disjoint, and their union is the connected-centralizer spectrum.
pub fn verify_matchup(orbit: &OrbitLabel, n: usize, cutoff: Cutoff) -> Result<MatchupReport> {
    let psis = characters_of(orbit, n)?;
    let xis = unipotent_modules(orbit, n)?;
    assert_eq!(psis.len(), xis.len());

    let mut pairs = Vec::new();
    let mut psi_sets: Vec<BTreeSet<Weight>> = Vec::new();
    for (label, (xi_name, xi_fam)) in psis.iter().zip(&xis) {
        let psi_fam = regular_section_family(orbit, n, label.psi)?;
        let psi_set: BTreeSet<Weight> = enumerate_family(&psi_fam, cutoff).into_iter().collect();
        let xi_set: BTreeSet<Weight> = enumerate_family(xi_fam, cutoff).into_iter().collect();
        pairs.push(MatchupPair {
            psi: label.psi.to_string(),
            xi: xi_name.clone(),
            count: psi_set.len(),
            matched: psi_set == xi_set,
            only_psi: psi_set.difference(&xi_set).cloned().collect(),
            only_xi: xi_set.difference(&psi_set).cloned().collect(),
        });
        psi_sets.push(psi_set);
    }

    let mut families_disjoint = true;
    for i in 0..psi_sets.len() {
        for j in i + 1..psi_sets.len() {
            if psi_sets[i].intersection(&psi_sets[j]).next().is_some() {
                families_disjoint = false;
            }
        }
    }

    let mut union: BTreeSet<Weight> = BTreeSet::new();
    for s in &psi_sets {
        union.extend(s.iter().cloned());
    }
    let mut connected: BTreeSet<Weight> = BTreeSet::new();
    for integrality in [Integrality::Integral, Integrality::HalfIntegral] {
        for w in dominant_weights(n, integrality, cutoff) {
            if connected_spectrum_contains(orbit, n, &w)? {
                connected.insert(w);
            }
        }
    }

    Ok(MatchupReport {
        orbit: orbit.clone(),
        n,
        cutoff,
        pairs,
        families_disjoint,
        union_is_connected_spectrum: union == connected,
    })
}

/// The unique `sp`-fixed summand of `S(n_perp) (x) F(mu)` over all
/// symmetric-power degrees, via the Pieri rule and Helgason's criterion.
pub fn sp_fixed_summand(mu: &LeviWeight) -> Result<(i64, LeviWeight)> {
    let m = mu.block.len();
    if m == 0 {
        return Ok((0, mu.clone()));
    }
    let kmax = (mu.block[0] - mu.block[m - 1]).doubled() / 2;
    let mut found = Vec::new();
    for k in 0..=kmax.max(0) {
        for s in pieri_tensor(mu, k)? {
            if helgason_sp_fixed(&s.block)? {
                found.push((k, s));
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop_first_unchecked()),
        c => Err(Error::Invalid(format!(
            "expected a unique sp-fixed summand for {mu}, found {c}"
        ))),
    }
}

trait PopFirst<T> {
    fn pop_first_unchecked(self) -> T;
}

impl<T> PopFirst<T> for Vec<T> {
    fn pop_first_unchecked(mut self) -> T {
        self.remove(0)
    }
}

/// Result of the Case-1 BGG length-0/length-1 analysis for one lambda.
#[derive(Debug, Clone)]
pub struct BggCase1Report {
    pub lambda: Weight,
    /// The fixed-vector Levi weight at length 0.
    pub fixed_weight: LeviWeight,
    /// `ad h` eigenvalue on the fixed vector: `-2 sum a_{2i-1}`.
    pub h_eigenvalue: i64,
    /// Negatives of the `h`-weights for `w_0, w_1, w_2, w_3`.
    pub wth_values: [i64; 4],
    /// Whether the three length-1 values differ from the length-0 value.
    pub separated: bool,
}

/// `2c + sum(block)`: the pairing of a Levi weight against
/// `h = H(2, 1, ..., 1, 0)`.
fn h_pairing(w: &LeviWeight) -> i64 {
    let mut acc = w.gl1.doubled() * 2;
    for b in &w.block {
        acc += b.doubled();
    }
    assert_eq!(acc % 2, 0);
    acc / 2
}

/// Runs the executable §3.2 derivation for Case 1 at `n = 2p`: builds the
/// Levi-lowest-weight data for `w` of length 0 and the three length-1
/// elements, locates the `sp(n-2)`-fixed Pieri summand of each, and
/// compares `ad h` eigenvalues.
pub fn bgg_case1_analysis(lambda: &Weight, n: usize) -> Result<BggCase1Report> {
    if n % 2 != 0 || n < 4 {
        return Err(Error::Invalid(format!("Case 1 needs even n >= 4, got {n}")));
    }
    if lambda.rank() != n || !lambda.is_dominant() || lambda.parity() != Parity::Integral {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let one = Half::from_int(1);
    // a_i, 1-based
    let a = |i: usize| lambda.coord(i - 1);

    // lambda and w_i . lambda in Levi coordinates (c; b_{n-1}, ..., b_2; d)
    let mu0 = LeviWeight::new(
        -a(1),
        (2..n).rev().map(|i| -a(i)).collect(),
        -a(n),
    );
    let mut block1: Vec<Half> = (3..n).rev().map(|i| -a(i)).collect();
    block1.push(-a(1) - one);
    let mu1 = LeviWeight::new(-a(2) + one, block1, -a(n));
    let mut block2: Vec<Half> = vec![-a(n) + one];
    block2.extend((2..n - 1).rev().map(|i| -a(i)));
    let mu2 = LeviWeight::new(-a(1), block2, -a(n - 1) - one);
    let mut block3: Vec<Half> = vec![a(n) + one];
    block3.extend((2..n - 1).rev().map(|i| -a(i)));
    let mu3 = LeviWeight::new(-a(1), block3, a(n - 1) + one);

    let mut wth = [0i64; 4];
    let mut fixed0 = None;
    for (i, mu) in [&mu0, &mu1, &mu2, &mu3].into_iter().enumerate() {
        let (_, fixed) = sp_fixed_summand(mu)?;
        wth[i] = -h_pairing(&fixed);
        if i == 0 {
            fixed0 = Some(fixed);
        }
    }
    let fixed_weight = fixed0.unwrap();

    // closed form -2 sum a_{2i-1} must agree with the derivation
    let mut closed = 0i64;
    for i in (1..=n).step_by(2) {
        closed -= a(i).doubled(); // -2 a_i = -(doubled a_i)
    }
    assert_eq!(
        -wth[0], closed,
        "length-0 h-eigenvalue must be -2*sum(a_odd) at {lambda}"
    );

    Ok(BggCase1Report {
        lambda: lambda.clone(),
        fixed_weight,
        h_eigenvalue: closed,
        wth_values: wth,
        separated: wth[1..].iter().all(|v| *v != wth[0]),
    })
}

/// Tensor decompositions of the two spin representations of `so(2p)`: the
/// closed formulas of the lemma versus the character oracle.
#[derive(Debug, Clone)]
pub struct PinrepReport {
    pub p: usize,
    /// Lemma line 1: SPIN+ (x) SPIN+ = sum of V(1^{2k}, 0^{p-2k}).
    pub formula_same: Vec<Weight>,
    /// Lemma line 2: SPIN+ (x) SPIN- = sum of V(1^{2k+1}, 0^...).
    pub formula_mixed: Vec<Weight>,
    pub oracle_same: Vec<Weight>,
    pub oracle_mixed: Vec<Weight>,
    pub same_agrees: bool,
    pub mixed_agrees: bool,
    /// Whether the two lemma lines match the oracle after being swapped
    /// (the odd-p situation), comparing last coordinates by absolute value.
    pub swap_agrees_mod_last_sign: bool,
}

fn ones_weight(p: usize, ones: usize) -> Weight {
    let mut c = vec![0i64; p];
    for x in c.iter_mut().take(ones) {
        *x = 1;
    }
    Weight::integral(&c)
}

fn last_abs(w: &Weight) -> Vec<Half> {
    let mut c = w.coords().to_vec();
    if let Some(l) = c.last_mut() {
        *l = l.abs();
    }
    c
}

pub fn pinrep_decomposition(p: usize, d_char: u128) -> Result<PinrepReport> {
    if !(2..=4).contains(&p) {
        return Err(Error::Capacity(format!("pinrep oracle supports p in 2..=4, got {p}")));
    }
    let rs = RootSystemD::new(p)?;
    let spin_plus = Weight::half_integral(&vec![1; p]);
    let mut minus = vec![1i64; p];
    minus[p - 1] = -1;
    let spin_minus = Weight::half_integral(&minus);

    let formula_same: Vec<Weight> = (0..=p / 2).map(|k| ones_weight(p, 2 * k)).collect();
    let formula_mixed: Vec<Weight> = (0..=(p - 1) / 2).map(|k| ones_weight(p, 2 * k + 1)).collect();

    let decompose = |a: &Weight, b: &Weight| -> Result<Vec<Weight>> {
        let parts = tensor_decompose(a, b, &rs, d_char)?;
        for (w, m) in &parts {
            assert_eq!(*m, 1, "spin tensor products are multiplicity-free ({w})");
        }
        Ok(parts.into_iter().map(|(w, _)| w).collect())
    };
    let oracle_same = decompose(&spin_plus, &spin_plus)?;
    let oracle_mixed = decompose(&spin_plus, &spin_minus)?;

    let as_set = |v: &[Weight]| -> BTreeSet<Weight> { v.iter().cloned().collect() };
    let as_abs_set = |v: &[Weight]| -> BTreeSet<Vec<Half>> { v.iter().map(last_abs).collect() };
    let same_agrees = as_set(&formula_same) == as_set(&oracle_same);
    let mixed_agrees = as_set(&formula_mixed) == as_set(&oracle_mixed);
    let swap_agrees_mod_last_sign = as_abs_set(&formula_same) == as_abs_set(&oracle_mixed)
        && as_abs_set(&formula_mixed) == as_abs_set(&oracle_same);

    Ok(PinrepReport {
        p,
        formula_same,
        formula_mixed,
        oracle_same,
        oracle_mixed,
        same_agrees,
        mixed_agrees,
        swap_agrees_mod_last_sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::enumerate_small_orbits;

    fn orbit(s: &str) -> OrbitLabel {
        s.parse().unwrap()
    }

    #[test]
    fn character_counts() {
        assert_eq!(characters_of(&orbit("3,2,2,1"), 4).unwrap().len(), 4);
        assert_eq!(characters_of(&orbit("3,2,2,1,1,1"), 5).unwrap().len(), 2);
        assert_eq!(characters_of(&orbit("2,2,2,2:I"), 4).unwrap().len(), 2);
        assert_eq!(characters_of(&orbit("2,2,1,1,1,1"), 4).unwrap().len(), 1);
        assert_eq!(characters_of(&orbit("1,1,1,1,1,1,1,1"), 4).unwrap().len(), 1);
    }

    #[test]
    fn case1_psi_families() {
        let o = orbit("3,2,2,1");
        let f1 = regular_section_family(&o, 4, PsiIndex::Psi(1)).unwrap();
        assert!(f1.contains(&Weight::integral(&[2, 1, 1, 0])));
        assert!(!f1.contains(&Weight::integral(&[1, 0, 0, 0])));
        let f2 = regular_section_family(&o, 4, PsiIndex::Psi(2)).unwrap();
        assert!(f2.contains(&Weight::integral(&[1, 0, 0, 0])));
        // p = 2: psi_3 takes sum in 2Z, psi_4 sum in 2Z+1
        let f3 = regular_section_family(&o, 4, PsiIndex::Psi(3)).unwrap();
        assert!(f3.contains(&Weight::half_integral(&[1, 1, 1, 1])));
        assert!(!f3.contains(&Weight::half_integral(&[1, 1, 1, -1])));
        let f4 = regular_section_family(&o, 4, PsiIndex::Psi(4)).unwrap();
        assert!(f4.contains(&Weight::half_integral(&[1, 1, 1, -1])));
        assert!(f4.contains(&Weight::half_integral(&[3, 1, 1, 1])));
    }

    #[test]
    fn case1_psi1_cutoff_two() {
        let o = orbit("3,2,2,1");
        let f1 = regular_section_family(&o, 4, PsiIndex::Psi(1)).unwrap();
        let listed: Vec<String> = enumerate_family(&f1, Cutoff::SumAbs(2))
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(listed, vec!["(0,0,0,0)", "(1,1,0,0)", "(2,0,0,0)"]);
    }

    #[test]
    fn case3_triv_cutoff_a1() {
        let o = orbit("2,2,2,2:I");
        let f = regular_section_family(&o, 4, PsiIndex::Triv).unwrap();
        let listed: Vec<String> = enumerate_family(&f, Cutoff::MaxA1(1))
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(listed, vec!["(0,0,0,0)", "(1,1,0,0)", "(1,1,1,1)"]);
    }

    #[test]
    fn case3_ii_sgn_family() {
        let o = orbit("2,2,2,2:II");
        let f = regular_section_family(&o, 4, PsiIndex::Sgn).unwrap();
        assert!(f.contains(&Weight::half_integral(&[3, 3, 1, -1])));
        assert!(!f.contains(&Weight::half_integral(&[3, 3, 1, 1])));
        assert!(!f.contains(&Weight::integral(&[1, 1, 1, -1])));
    }

    #[test]
    fn case4_triv_family() {
        // [2,2,1,1,1,1] at n = 4: V(a,a,0,0), a >= 0 integral
        let o = orbit("2,2,1,1,1,1");
        let f = regular_section_family(&o, 4, PsiIndex::Triv).unwrap();
        let listed: Vec<String> = enumerate_family(&f, Cutoff::SumAbs(6))
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(
            listed,
            vec!["(0,0,0,0)", "(1,1,0,0)", "(2,2,0,0)", "(3,3,0,0)"]
        );
    }

    #[test]
    fn matchup_all_small_orbits() {
        for n in [4usize, 5] {
            for o in enumerate_small_orbits(n).unwrap() {
                let rep = verify_matchup(&o.label, n, Cutoff::SumAbs(5)).unwrap();
                assert!(rep.ok(), "matchup failed for {} at n={n}: {rep:?}", o.label);
            }
        }
    }

    #[test]
    fn bgg_fixed_weight_matches_closed_form() {
        // lambda = (2,1,1,0) at n = 4: Eq. fix-vec gives
        // (-a_1 + k; -a_2, -a_2; -a_n) with k = a_2 - a_3 = 0
        let rep = bgg_case1_analysis(&Weight::integral(&[2, 1, 1, 0]), 4).unwrap();
        assert_eq!(rep.fixed_weight.to_string(), "(-2;-1,-1;0)");
        assert_eq!(rep.h_eigenvalue, -2 * (2 + 1));
        assert_eq!(rep.wth_values[0], 6);
        // line 3 of the closed form: 2(a_1 + a_4 - 1) = 2
        assert_eq!(rep.wth_values[2], 2);
        assert!(rep.separated);
    }

    #[test]
    fn bgg_closed_forms_random() {
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for n in [4usize, 6] {
            let p = n / 2;
            for _ in 0..250 {
                // random dominant integral lambda with entries <= 6
                let mut c: Vec<i64> = (0..n).map(|_| (next() % 7) as i64).collect();
                c.sort_unstable_by(|x, y| y.cmp(x));
                if next() % 2 == 0 {
                    c[n - 1] = -c[n - 1];
                }
                let lambda = Weight::integral(&c);
                let rep = bgg_case1_analysis(&lambda, n).unwrap();
                let a = |i: usize| c[i - 1];
                let odd_tail: i64 = (3..n).step_by(2).map(a).sum();
                let mid: i64 = (1..n - 2).step_by(2).map(a).sum();
                assert_eq!(rep.h_eigenvalue, -2 * (1..=n).step_by(2).map(a).sum::<i64>());
                // corrected line 2 and verbatim lines 3, 4 of Eq. wth
                assert_eq!(rep.wth_values[1], 2 * (a(2) - 1 + odd_tail), "{lambda}");
                assert_eq!(rep.wth_values[2], 2 * (mid + a(n) - 1), "{lambda}");
                assert_eq!(rep.wth_values[3], 2 * (mid - a(n) - 1), "{lambda}");
                assert!(rep.separated, "{lambda}");
                let _ = p;
            }
        }
    }

    #[test]
    fn pinrep_even_p_agrees() {
        let rep = pinrep_decomposition(2, 200_000).unwrap();
        assert!(rep.same_agrees && rep.mixed_agrees);
        assert_eq!(
            rep.oracle_same.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            vec!["(0,0)", "(1,1)"]
        );
        assert_eq!(
            rep.oracle_mixed.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            vec!["(1,0)"]
        );
        let rep4 = pinrep_decomposition(4, 200_000).unwrap();
        assert!(rep4.same_agrees && rep4.mixed_agrees);
    }

    #[test]
    fn pinrep_odd_p_swaps() {
        let rep = pinrep_decomposition(3, 200_000).unwrap();
        assert!(!rep.same_agrees);
        assert!(rep.swap_agrees_mod_last_sign);
    }
}
