//! Bookkeeping for the averaging formula: the reduction data `Red_{b,phi}`
//! attached to unramified Kottwitz points, the predicted Weil summands of
//! each `(b, w)`, and multiset checks of Frobenius eigenvalues against the
//! weights of `V_mu`. Only eigenvalue multisets and degree shifts are
//! compared; nothing here sees the representations themselves.

use crate::characters::{delta_parabolic_half, CharacterValue, ToralParameter, UnramifiedCharacter};
use crate::error::{Error, Result};
use crate::galois::CoinvariantLattice;
use crate::kottwitz::{enumerate_bgmu_un, is_split_gl, unramified_point, KottwitzPoint};
use crate::linalg::{to_integral, Q};
use crate::root_datum::{coset_bfs, WeylWord};
use crate::weights::{classify_minuscule, freudenthal, MinusculeClass, WeightSystem};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionSummand {
    pub w: WeylWord,
    /// `chi^w`.
    pub twisted: UnramifiedCharacter,
    /// `chi^w delta_P^{1/2}`, the character induced from the Borel of the Levi.
    pub character: UnramifiedCharacter,
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionDatum {
    /// `None` when the class is not unramified; then there are no summands.
    pub point: Option<KottwitzPoint>,
    pub summands: Vec<ReductionSummand>,
}

impl ReductionDatum {
    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Summand characters as a multiset.
    pub fn characters(&self) -> BTreeMap<UnramifiedCharacter, usize> {
        let mut out = BTreeMap::new();
        for s in &self.summands {
            *out.entry(s.character.clone()).or_insert(0) += 1;
        }
        out
    }
}

/// `Red_{b,phi}`: one summand `chi^w delta_P^{1/2}[-<2 rho, nu_b>]` per `w` in `W_b`.
pub fn red_b_phi(lat: &CoinvariantLattice, pt: &KottwitzPoint, chi: &UnramifiedCharacter) -> ReductionDatum {
    let delta = delta_parabolic_half(lat, &pt.hn_levi);
    let shift = -pt.degree(lat);
    let summands = pt
        .coset_reps
        .iter()
        .map(|w| {
            let twisted = chi.twist(lat, w);
            ReductionSummand { w: w.clone(), character: twisted.mul(&delta), twisted, shift }
        })
        .collect();
    ReductionDatum { point: Some(pt.clone()), summands }
}

/// `Red_{b,phi}` for the GL_n class with the given Newton polygon; empty unless
/// all slopes are integral.
pub fn reduction_for_polygon(
    lat: &CoinvariantLattice,
    slopes: &[Q],
    chi: &UnramifiedCharacter,
) -> Result<ReductionDatum> {
    if !is_split_gl(lat) {
        return Err(Error::WrongGroup("split GL_n".into()));
    }
    crate::error::check_len(slopes, lat.rank())?;
    match to_integral(slopes) {
        None => Ok(ReductionDatum { point: None, summands: Vec::new() }),
        Some(v) => Ok(red_b_phi(lat, &unramified_point(lat, &lat.project(&v)), chi)),
    }
}

/// All elements of `W^sigma`, grouped into cosets of `W_L` and represented by
/// the shortest element of each coset.
fn shortest_in_cosets(lat: &CoinvariantLattice, levi: &[usize], cap: usize) -> Result<Vec<WeylWord>> {
    let rd = &lat.rd;
    let start: Vec<i64> = (0..rd.semisimple_rank())
        .map(|i| i64::from(!levi.iter().any(|&j| lat.orbits[j].contains(&i))))
        .collect();
    let mut best: HashMap<Vec<i64>, WeylWord> = HashMap::new();
    for w in lat.relative_weyl_elements(cap)? {
        let key = rd.apply_labels(&w, &start);
        let len = rd.length(&w);
        match best.get(&key) {
            Some(b) if rd.length(b) <= len => {}
            _ => {
                best.insert(key, w);
            }
        }
    }
    let mut reps: Vec<WeylWord> = best.into_values().collect();
    reps.sort_by_key(|w| (rd.length(w), rd.element_key(w)));
    Ok(reps)
}

/// The multiset `{chi^w delta_P^{1/2}}` from the geometric lemma, computed by
/// enumerating the whole relative Weyl group.
pub fn geometric_lemma_red_triv(
    lat: &CoinvariantLattice,
    pt: &KottwitzPoint,
    chi: &UnramifiedCharacter,
    cap: usize,
) -> Result<BTreeMap<UnramifiedCharacter, usize>> {
    let delta = delta_parabolic_half(lat, &pt.hn_levi);
    let mut out = BTreeMap::new();
    for w in shortest_in_cosets(lat, &pt.hn_levi, cap)? {
        *out.entry(chi.twist(lat, &w).mul(&delta)).or_insert(0) += 1;
    }
    Ok(out)
}

/// Elements of the relative Weyl group of the Levi `levi`.
pub fn levi_weyl_elements(lat: &CoinvariantLattice, levi: &[usize], cap: usize) -> Result<Vec<WeylWord>> {
    let gens: Vec<(Vec<usize>, WeylWord)> =
        levi.iter().map(|&j| (lat.orbits[j].clone(), lat.rel_gens[j].clone())).collect();
    coset_bfs(&lat.rd.cartan, &gens, vec![1; lat.rd.semisimple_rank()], cap)
}

/// Summand characters of `Red_{b,phi}` up to `W_M` conjugacy, as a multiset.
pub fn summand_classes(
    lat: &CoinvariantLattice,
    red: &ReductionDatum,
    cap: usize,
) -> Result<BTreeMap<UnramifiedCharacter, usize>> {
    let Some(pt) = &red.point else { return Ok(BTreeMap::new()) };
    let levi_w = levi_weyl_elements(lat, &pt.hn_levi, cap)?;
    let mut out = BTreeMap::new();
    for s in &red.summands {
        let key = levi_w.iter().map(|u| s.character.twist(lat, u)).min().expect("identity");
        *out.entry(key).or_insert(0) += 1;
    }
    Ok(out)
}

/// Frobenius eigenvalues with multiplicities and degree shifts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeilCharacterMultiset {
    pub entries: BTreeMap<(CharacterValue, i64), u64>,
}

impl WeilCharacterMultiset {
    pub fn insert(&mut self, value: CharacterValue, shift: i64, mult: u64) {
        if mult > 0 {
            *self.entries.entry((value, shift)).or_insert(0) += mult;
        }
    }

    pub fn union(&mut self, other: &WeilCharacterMultiset) {
        for (&(v, s), &m) in &other.entries {
            self.insert(v, s, m);
        }
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Forget the shifts.
    pub fn values(&self) -> BTreeMap<CharacterValue, u64> {
        let mut out = BTreeMap::new();
        for (&(v, _), &m) in &self.entries {
            *out.entry(v).or_insert(0) += m;
        }
        out
    }
}

/// The weights of `V_mu` lying over `w(b_T)`, as Frobenius eigenvalues with
/// their multiplicities, shifted by `-<2 rho, nu_b>`.
pub fn predicted_weil_summand(
    lat: &CoinvariantLattice,
    ws: &WeightSystem,
    pt: &KottwitzPoint,
    w: &WeylWord,
    phi: &ToralParameter,
) -> Result<WeilCharacterMultiset> {
    if !pt.coset_reps.contains(w) {
        return Err(Error::Precondition(format!("{w} is not a stored coset representative")));
    }
    let target = pt.fiber_element(lat, w);
    let shift = -pt.degree(lat);
    let mut out = WeilCharacterMultiset::default();
    for (nu, &m) in &ws.mults {
        if lat.project(nu) == target {
            out.insert(phi.frobenius_value(lat, nu), shift, m);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointBlock {
    pub point: KottwitzPoint,
    pub shift: i64,
    pub per_w: Vec<(WeylWord, WeilCharacterMultiset)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AveragingReport {
    pub blocks: Vec<PointBlock>,
    /// Union of the predicted summands, shifts forgotten.
    pub predicted: BTreeMap<CharacterValue, u64>,
    /// Frobenius eigenvalues of `r_mu o phi` with multiplicities.
    pub expected: BTreeMap<CharacterValue, u64>,
    /// Sum over `(b, w)` of the coinvariant weight space dimensions.
    pub total_multiplicity: u64,
    pub dim: u64,
    /// Whether the per-`(b, w)` assignment is a theorem (minuscule and
    /// quasi-minuscule `mu`) rather than conjectural.
    pub per_w_proved: bool,
    pub pass: bool,
}

impl AveragingReport {
    /// Eigenvalues with `predicted - expected` multiplicity, nonzero entries only.
    pub fn diff(&self) -> Vec<(CharacterValue, i64)> {
        let mut keys: Vec<&CharacterValue> = self.predicted.keys().chain(self.expected.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|k| {
                let d = *self.predicted.get(k).unwrap_or(&0) as i64 - *self.expected.get(k).unwrap_or(&0) as i64;
                (d != 0).then_some((*k, d))
            })
            .collect()
    }
}

pub fn refined_averaging_check(
    lat: &CoinvariantLattice,
    mu: &[i64],
    phi: &ToralParameter,
    cap: usize,
) -> Result<AveragingReport> {
    let ws = freudenthal(&lat.rd, mu, cap)?;
    let points = enumerate_bgmu_un(lat, mu)?;
    let mut blocks = Vec::new();
    let mut all = WeilCharacterMultiset::default();
    for pt in points {
        let mut per_w = Vec::new();
        for w in &pt.coset_reps {
            let s = predicted_weil_summand(lat, &ws, &pt, w, phi)?;
            all.union(&s);
            per_w.push((w.clone(), s));
        }
        blocks.push(PointBlock { shift: -pt.degree(lat), point: pt, per_w });
    }
    let mut expected = BTreeMap::new();
    for (nu, &m) in &ws.mults {
        *expected.entry(phi.frobenius_value(lat, nu)).or_insert(0) += m;
    }
    let predicted = all.values();
    let total_multiplicity = all.total();
    let per_w_proved = classify_minuscule(&lat.rd, mu)? != MinusculeClass::Neither;
    let pass = predicted == expected && total_multiplicity == ws.dim;
    Ok(AveragingReport { blocks, predicted, expected, total_multiplicity, dim: ws.dim, per_w_proved, pass })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuOrdinaryEntry {
    pub w: WeylWord,
    /// Frobenius value of the weight `w(w_0 mu)`.
    pub expected: CharacterValue,
    pub summand: WeilCharacterMultiset,
    pub ok: bool,
}

/// For the mu-ordinary point, each `w` should contribute the single weight
/// `w(w_0 mu)` with multiplicity one.
pub fn mu_ordinary_check(
    lat: &CoinvariantLattice,
    mu: &[i64],
    phi: &ToralParameter,
    cap: usize,
) -> Result<Vec<MuOrdinaryEntry>> {
    let ws = freudenthal(&lat.rd, mu, cap)?;
    let pt = enumerate_bgmu_un(lat, mu)?.into_iter().next().expect("mu is always present");
    let rd = &lat.rd;
    let mu_t = rd.apply_cochar(&rd.longest_element(), mu);
    pt.coset_reps
        .iter()
        .map(|w| {
            let summand = predicted_weil_summand(lat, &ws, &pt, w, phi)?;
            let expected = phi.frobenius_value(lat, &rd.apply_cochar(w, &mu_t));
            let ok = summand.total() == 1 && summand.values().contains_key(&expected);
            Ok(MuOrdinaryEntry { w: w.clone(), expected, summand, ok })
        })
        .collect()
}

/// The contribution of the basic class when `B(G, mu)_un` consists of the
/// mu-ordinary class and one central class.
pub fn quasi_minuscule_basic_contribution(
    lat: &CoinvariantLattice,
    mu: &[i64],
    phi: &ToralParameter,
    cap: usize,
) -> Result<WeilCharacterMultiset> {
    let points = enumerate_bgmu_un(lat, mu)?;
    if points.len() != 2 || !points[1].is_central(lat) {
        return Err(Error::Precondition(format!(
            "B(G, mu)_un must be the mu-ordinary class and one central class; found {} classes",
            points.len()
        )));
    }
    let ws = freudenthal(&lat.rd, mu, cap)?;
    predicted_weil_summand(lat, &ws, &points[1], &WeylWord::identity(), phi)
}
