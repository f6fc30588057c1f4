//! Unramified characters of `T(Q_p)` with values `c * q^k` for a formal `q`,
//! the genericity / normalized regularity conditions, mu-regularity and the
//! GL_n irreducibility criterion for principal series.

use crate::error::{check_len, Error, Result};
use crate::galois::CoinvariantLattice;
use crate::linalg::{dot, q, solve_integral, sub_vec, Q};
use crate::root_datum::{TypeTag, WeylWord};
use crate::weights::{classify_minuscule, freudenthal, MinusculeClass};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// The value `c * q^k`. The exponent is rational so that `delta_B^{1/2}` is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterValue {
    pub c: Q,
    pub k: Q,
}

impl CharacterValue {
    pub fn one() -> CharacterValue {
        CharacterValue { c: Q::one(), k: Q::zero() }
    }

    pub fn new(c: Q, k: Q) -> Result<CharacterValue> {
        if c.is_zero() {
            return Err(Error::Parse("character values must be nonzero".into()));
        }
        Ok(CharacterValue { c, k })
    }

    /// `q^k`.
    pub fn q_pow(k: Q) -> CharacterValue {
        CharacterValue { c: Q::one(), k }
    }

    pub fn mul(self, o: CharacterValue) -> CharacterValue {
        CharacterValue { c: self.c * o.c, k: self.k + o.k }
    }

    pub fn inv(self) -> CharacterValue {
        CharacterValue { c: self.c.recip(), k: -self.k }
    }

    pub fn pow(self, n: i64) -> CharacterValue {
        let c = if n >= 0 { pow_q(self.c, n as u32) } else { pow_q(self.c.recip(), (-n) as u32) };
        CharacterValue { c, k: self.k * q(n) }
    }

    pub fn is_one(&self) -> bool {
        self.c.is_one() && self.k.is_zero()
    }

    /// Whether the value lies in `{1, q^f, q^-f}`.
    pub fn is_forbidden(&self, f: usize) -> bool {
        self.c.is_one() && (self.k.is_zero() || self.k.abs() == q(f as i64))
    }
}

fn pow_q(x: Q, n: u32) -> Q {
    let mut out = Q::one();
    for _ in 0..n {
        out *= x;
    }
    out
}

impl fmt::Display for CharacterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c.is_one(), self.k.is_zero()) {
            (_, true) => write!(f, "{}", self.c),
            (true, false) => write!(f, "q^{}", self.k),
            (false, false) => write!(f, "{}*q^{}", self.c, self.k),
        }
    }
}

fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let err = || Error::Parse(format!("cannot parse `{s}` as a rational number"));
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| err())?, b.trim().parse().map_err(|_| err())?);
            if b == 0 {
                return Err(err());
            }
            Ok(Q::new(a, b))
        }
        None => s.parse::<i64>().map(q).map_err(|_| err()),
    }
}

impl FromStr for CharacterValue {
    type Err = Error;

    /// Accepts `c`, `q`, `q^k`, `c*q`, `c*q^k` with rational `c` and `k`.
    fn from_str(s: &str) -> Result<CharacterValue> {
        let s = s.trim();
        let (cpart, qpart) = match s.find('q') {
            None => (s, None),
            Some(i) => {
                let head = s[..i].trim().trim_end_matches('*').trim();
                (head, Some(&s[i + 1..]))
            }
        };
        let c = match cpart {
            "" => Q::one(),
            "-" => -Q::one(),
            t => parse_q(t)?,
        };
        let k = match qpart {
            None => Q::zero(),
            Some(rest) => match rest.trim().strip_prefix('^') {
                Some(e) => parse_q(e.trim_start_matches('(').trim_end_matches(')'))?,
                None if rest.trim().is_empty() => Q::one(),
                None => return Err(Error::Parse(format!("cannot parse `{s}`"))),
            },
        };
        CharacterValue::new(c, k)
    }
}

/// Parse a comma separated list of character values.
pub fn parse_values(s: &str) -> Result<Vec<CharacterValue>> {
    s.split(',').map(|t| t.parse()).collect()
}

/// An unramified character, recorded by its values on the basis of `X_*(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnramifiedCharacter {
    pub values: Vec<CharacterValue>,
}

/// A toral parameter: the image of Frobenius in the dual torus, recorded by
/// its values on the standard basis of `X_*(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToralParameter {
    pub values: Vec<CharacterValue>,
}

fn eval_on(values: &[CharacterValue], v: &[i64]) -> CharacterValue {
    values.iter().zip(v).fold(CharacterValue::one(), |acc, (x, &n)| acc.mul(x.pow(n)))
}

impl ToralParameter {
    pub fn new(lat: &CoinvariantLattice, values: Vec<CharacterValue>) -> Result<ToralParameter> {
        check_len(&values, lat.rank())?;
        Ok(ToralParameter { values })
    }

    /// Frobenius eigenvalue on the weight `nu`: the parameter evaluated on the norm of `nu`.
    pub fn frobenius_value(&self, lat: &CoinvariantLattice, nu: &[i64]) -> CharacterValue {
        eval_on(&self.values, &lat.norm(nu))
    }

    /// The character of `T(Q_p)` attached to the parameter.
    pub fn character(&self, lat: &CoinvariantLattice) -> UnramifiedCharacter {
        UnramifiedCharacter {
            values: lat.invariant_basis().iter().map(|b| eval_on(&self.values, b)).collect(),
        }
    }
}

impl UnramifiedCharacter {
    pub fn new(lat: &CoinvariantLattice, values: Vec<CharacterValue>) -> Result<UnramifiedCharacter> {
        check_len(&values, lat.invariant_basis().len())?;
        Ok(UnramifiedCharacter { values })
    }

    pub fn trivial(lat: &CoinvariantLattice) -> UnramifiedCharacter {
        UnramifiedCharacter { values: vec![CharacterValue::one(); lat.invariant_basis().len()] }
    }

    /// Value on a Frobenius invariant cocharacter.
    pub fn eval(&self, lat: &CoinvariantLattice, v: &[i64]) -> Result<CharacterValue> {
        let coords = lat
            .invariant_coords(v)
            .ok_or_else(|| Error::Precondition(format!("{v:?} is not Frobenius invariant")))?;
        Ok(eval_on(&self.values, &coords))
    }

    pub fn mul(&self, o: &UnramifiedCharacter) -> UnramifiedCharacter {
        UnramifiedCharacter { values: self.values.iter().zip(&o.values).map(|(a, b)| a.mul(*b)).collect() }
    }

    pub fn inv(&self) -> UnramifiedCharacter {
        UnramifiedCharacter { values: self.values.iter().map(|a| a.inv()).collect() }
    }

    /// `chi^w(lambda) = chi(w lambda)` for `w` in the relative Weyl group.
    pub fn twist(&self, lat: &CoinvariantLattice, w: &WeylWord) -> UnramifiedCharacter {
        UnramifiedCharacter {
            values: lat
                .invariant_basis()
                .iter()
                .map(|b| self.eval(lat, &lat.rd.apply_cochar(w, b)).expect("W^sigma preserves invariants"))
                .collect(),
        }
    }

    /// The character `lambda -> q^{-<l, lambda>/2}` for an invariant character `l`
    /// (a sum of roots).
    pub fn from_half_exponent(lat: &CoinvariantLattice, l: &[i64]) -> UnramifiedCharacter {
        UnramifiedCharacter {
            values: lat
                .invariant_basis()
                .iter()
                .map(|b| CharacterValue::q_pow(Q::new(-dot(l, b), 2)))
                .collect(),
        }
    }
}

/// `delta_B^{1/2}`: `lambda -> q^{-<rho, lambda>}`.
pub fn delta_half(lat: &CoinvariantLattice) -> UnramifiedCharacter {
    UnramifiedCharacter::from_half_exponent(lat, &lat.rd.two_rho)
}

/// Sum of the roots of the unipotent radical of the standard parabolic with
/// Levi given by relative orbits `levi`.
pub fn unipotent_root_sum(lat: &CoinvariantLattice, levi: &[usize]) -> Vec<i64> {
    let rd = &lat.rd;
    let nodes: Vec<usize> = levi.iter().flat_map(|&j| lat.orbits[j].iter().copied()).collect();
    let mut out = vec![0; rd.rank];
    for r in &rd.positive_roots {
        let in_levi = r.coeffs.iter().enumerate().all(|(i, &c)| c == 0 || nodes.contains(&i));
        if !in_levi {
            for (x, y) in out.iter_mut().zip(&r.root) {
                *x += y;
            }
        }
    }
    out
}

/// `delta_P^{1/2}` for the standard parabolic with Levi `levi`.
pub fn delta_parabolic_half(lat: &CoinvariantLattice, levi: &[usize]) -> UnramifiedCharacter {
    UnramifiedCharacter::from_half_exponent(lat, &unipotent_root_sum(lat, levi))
}

/// `(t, f)`: the character on the orbit sum of coroots, and the orbit size.
pub fn orbit_test_value(
    lat: &CoinvariantLattice,
    chi: &UnramifiedCharacter,
    orbit: &[Vec<i64>],
) -> Result<(CharacterValue, usize)> {
    let mut s = vec![0; lat.rank()];
    for v in orbit {
        for (x, y) in s.iter_mut().zip(v) {
            *x += y;
        }
    }
    Ok((chi.eval(lat, &s)?, orbit.len()))
}

fn coroot_orbit_vectors(lat: &CoinvariantLattice, orbit: &[usize]) -> Vec<Vec<i64>> {
    orbit.iter().map(|&k| lat.rd.positive_roots[k].coroot.clone()).collect()
}

/// Frobenius orbit of a cocharacter.
pub fn cochar_orbit(lat: &CoinvariantLattice, v: &[i64]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for k in 0..lat.twist.order {
        let w = crate::linalg::mat_vec(lat.sigma_power(k), v);
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionLadder {
    pub weakly_generic: bool,
    pub generic: bool,
    /// `chi delta^{1/2} != (chi delta^{-1/2})^w` for all `w`.
    pub condition3: bool,
    /// `t^2` avoids `{1, q^{+-f}}` on every coroot orbit.
    pub condition4: bool,
    pub weakly_normalized_regular: bool,
    pub normalized_regular: bool,
    pub regular: bool,
    /// Human readable reasons for each failed condition.
    pub failures: Vec<String>,
}

pub fn condition_ladder(lat: &CoinvariantLattice, chi: &UnramifiedCharacter, cap: usize) -> Result<ConditionLadder> {
    check_len(&chi.values, lat.invariant_basis().len())?;
    let mut failures = Vec::new();
    let simple: Vec<Vec<usize>> = lat
        .orbits
        .iter()
        .map(|o| o.iter().map(|&i| lat.rd.root_index(&unit(lat.rd.semisimple_rank(), i)).unwrap()).collect())
        .collect();
    let mut weakly_generic = true;
    for o in &simple {
        let (t, f) = orbit_test_value(lat, chi, &coroot_orbit_vectors(lat, o))?;
        if t.is_forbidden(f) {
            weakly_generic = false;
            failures.push(format!("simple coroot orbit {}: t = {t}, f = {f}", fmt_orbit(o)));
        }
    }
    let mut generic = true;
    let mut condition4 = true;
    for o in &lat.coroot_orbits {
        let (t, f) = orbit_test_value(lat, chi, &coroot_orbit_vectors(lat, o))?;
        if t.is_forbidden(f) {
            generic = false;
            failures.push(format!("coroot orbit {}: t = {t}, f = {f}", fmt_orbit(o)));
        }
        if t.pow(2).is_forbidden(f) {
            condition4 = false;
            failures.push(format!("coroot orbit {}: t^2 = {}, f = {f}", fmt_orbit(o), t.pow(2)));
        }
    }
    let elems = lat.relative_weyl_elements(cap)?;
    let dh = delta_half(lat);
    let lhs = chi.mul(&dh);
    let rhs_base = chi.mul(&dh.inv());
    let mut condition3 = true;
    let mut regular = true;
    if !lat.rd.positive_roots.is_empty() {
        for w in &elems {
            if rhs_base.twist(lat, w) == lhs {
                condition3 = false;
                failures.push(format!("condition (3) fails at w = {w}"));
            }
            if !w.is_empty() && chi.twist(lat, w) == *chi {
                regular = false;
                failures.push(format!("chi is fixed by w = {w}"));
            }
        }
    }
    Ok(ConditionLadder {
        weakly_generic,
        generic,
        condition3,
        condition4,
        weakly_normalized_regular: generic && condition3,
        normalized_regular: generic && condition3 && condition4,
        regular,
        failures,
    })
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|k| i64::from(k == i)).collect()
}

fn fmt_orbit(o: &[usize]) -> String {
    let s: Vec<String> = o.iter().map(|k| (k + 1).to_string()).collect();
    format!("{{{}}}", s.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MuWitness {
    /// Every pair of distinct weights passed; the number of distinct differences checked.
    AllPairs { differences: usize },
    FailingPair { nu: Vec<i64>, nu_prime: Vec<i64>, t: CharacterValue, f: usize },
    Decomposition { pieces: Vec<(Vec<i64>, i64)>, central: Vec<i64>, failing: Option<Box<MuWitness>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuRegularity {
    pub holds: bool,
    pub witness: MuWitness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MuMode {
    Strong,
    /// Decompose into minuscule/quasi-minuscule pieces, optionally supplied as
    /// `(piece, multiplicity)`.
    Decomposed(Option<Vec<(Vec<i64>, i64)>>),
}

pub fn mu_regularity(
    lat: &CoinvariantLattice,
    chi: &UnramifiedCharacter,
    mu: &[i64],
    mode: &MuMode,
    cap: usize,
) -> Result<MuRegularity> {
    match mode {
        MuMode::Strong => strong_mu_regularity(lat, chi, mu, cap),
        MuMode::Decomposed(supplied) => {
            let (pieces, central) = match supplied {
                Some(p) => check_decomposition(lat, mu, p)?,
                None => decompose(lat, mu)?,
            };
            for (p, _) in &pieces {
                let r = strong_mu_regularity(lat, chi, p, cap)?;
                if !r.holds {
                    return Ok(MuRegularity {
                        holds: false,
                        witness: MuWitness::Decomposition { pieces, central, failing: Some(Box::new(r.witness)) },
                    });
                }
            }
            Ok(MuRegularity { holds: true, witness: MuWitness::Decomposition { pieces, central, failing: None } })
        }
    }
}

fn strong_mu_regularity(
    lat: &CoinvariantLattice,
    chi: &UnramifiedCharacter,
    mu: &[i64],
    cap: usize,
) -> Result<MuRegularity> {
    let ws = freudenthal(&lat.rd, mu, cap)?;
    let weights: Vec<&Vec<i64>> = ws.mults.keys().collect();
    let mut seen = BTreeSet::new();
    for (i, a) in weights.iter().enumerate() {
        for b in &weights[i + 1..] {
            let d = sub_vec(a, b);
            if !seen.insert(d.clone()) {
                continue;
            }
            let (t, f) = orbit_test_value(lat, chi, &cochar_orbit(lat, &d))?;
            if t.is_forbidden(f) {
                return Ok(MuRegularity {
                    holds: false,
                    witness: MuWitness::FailingPair { nu: (*a).clone(), nu_prime: (*b).clone(), t, f },
                });
            }
        }
    }
    Ok(MuRegularity { holds: true, witness: MuWitness::AllPairs { differences: seen.len() } })
}

/// A cocharacter with the given Dynkin labels, if the lattice contains one.
fn realize_labels(lat: &CoinvariantLattice, labels: &[i64]) -> Option<Vec<i64>> {
    let rd = &lat.rd;
    let cols: Vec<Vec<i64>> =
        (0..rd.rank).map(|k| rd.simple_roots.iter().map(|a| a[k]).collect()).collect();
    solve_integral(&cols, labels)
}

/// Greedy decomposition of `mu` (up to a central cocharacter) into minuscule
/// fundamental pieces followed by quasi-minuscule pieces.
pub fn decompose(lat: &CoinvariantLattice, mu: &[i64]) -> Result<(Vec<(Vec<i64>, i64)>, Vec<i64>)> {
    let rd = &lat.rd;
    check_len(mu, rd.rank)?;
    if !rd.is_dominant(mu) {
        return Err(Error::NotDominant(format!("{mu:?}")));
    }
    let s = rd.semisimple_rank();
    let mut rest = rd.labels(mu);
    let mut pieces: Vec<(Vec<i64>, i64)> = Vec::new();
    for i in 0..s {
        if rest[i] == 0 {
            continue;
        }
        if let Some(v) = realize_labels(lat, &unit(s, i)) {
            if classify_minuscule(rd, &v)? == MinusculeClass::Minuscule {
                pieces.push((v, rest[i]));
                rest[i] = 0;
            }
        }
    }
    let mut quasi: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut candidates: Vec<Vec<i64>> = (0..s).map(|i| unit(s, i)).collect();
    candidates.extend(rd.positive_roots.iter().map(|r| rd.labels(&r.coroot)));
    for lab in candidates {
        if lab.iter().any(|&x| x < 0) || quasi.iter().any(|(l, _)| *l == lab) {
            continue;
        }
        if let Some(v) = realize_labels(lat, &lab) {
            if classify_minuscule(rd, &v)? == MinusculeClass::QuasiMinuscule {
                quasi.push((lab, v));
            }
        }
    }
    while rest.iter().any(|&x| x != 0) {
        let pick = quasi.iter().find(|(l, _)| l.iter().zip(&rest).all(|(a, b)| a <= b));
        let Some((l, v)) = pick else {
            return Err(Error::NoDecomposition(format!("{mu:?}")));
        };
        rest = sub_vec(&rest, l);
        match pieces.iter_mut().find(|(p, _)| p == v) {
            Some(entry) => entry.1 += 1,
            None => pieces.push((v.clone(), 1)),
        }
    }
    let mut central = mu.to_vec();
    for (v, n) in &pieces {
        for (x, y) in central.iter_mut().zip(v) {
            *x -= n * y;
        }
    }
    Ok((pieces, central))
}

fn check_decomposition(
    lat: &CoinvariantLattice,
    mu: &[i64],
    pieces: &[(Vec<i64>, i64)],
) -> Result<(Vec<(Vec<i64>, i64)>, Vec<i64>)> {
    let rd = &lat.rd;
    let mut central = mu.to_vec();
    for (v, n) in pieces {
        check_len(v, rd.rank)?;
        if *n <= 0 || classify_minuscule(rd, v)? == MinusculeClass::Neither {
            return Err(Error::NoDecomposition(format!("supplied piece {v:?} is not minuscule or quasi-minuscule")));
        }
        for (x, y) in central.iter_mut().zip(v) {
            *x -= n * y;
        }
    }
    if rd.labels(&central).iter().any(|&x| x != 0) {
        return Err(Error::NoDecomposition(format!("supplied pieces do not sum to {mu:?} up to a central element")));
    }
    Ok((pieces.to_vec(), central))
}

/// Bernstein-Zelevinsky: `i_B(chi)` for split GL_n is irreducible iff no two
/// coordinates have ratio `q^{+-1}`.
pub fn gln_principal_series_irreducible(lat: &CoinvariantLattice, chi: &UnramifiedCharacter) -> Result<bool> {
    let n = match lat.rd.tag() {
        TypeTag::GL(n) if lat.twist.is_trivial() && lat.rd.spec.central_rank == 0 => n,
        _ => return Err(Error::WrongGroup("split GL_n".into())),
    };
    let vals: Vec<CharacterValue> =
        (0..n).map(|i| chi.eval(lat, &unit(n, i))).collect::<Result<_>>()?;
    for i in 0..n {
        for j in 0..n {
            let r = vals[i].mul(vals[j].inv());
            if i != j && r.c.is_one() && r.k == q(1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::GaloisTwist;
    use crate::root_datum::{build_root_datum, GroupSpec};
    use proptest::prelude::*;

    fn lattice(name: &str) -> CoinvariantLattice {
        let spec = GroupSpec::parse(name).unwrap();
        let rd = build_root_datum(&spec).unwrap();
        let tw = match spec.twist {
            Some(k) => GaloisTwist::named(&rd, k).unwrap(),
            None => GaloisTwist::trivial(&rd),
        };
        CoinvariantLattice::new(rd, tw).unwrap()
    }

    fn cv(s: &str) -> CharacterValue {
        s.parse().unwrap()
    }

    fn chi(lat: &CoinvariantLattice, s: &str) -> UnramifiedCharacter {
        UnramifiedCharacter::new(lat, parse_values(s).unwrap()).unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(cv("2*q^-1"), CharacterValue { c: q(2), k: q(-1) });
        assert_eq!(cv("q"), CharacterValue { c: q(1), k: q(1) });
        assert_eq!(cv("-1"), CharacterValue { c: q(-1), k: q(0) });
        assert_eq!(cv("-q^1/2"), CharacterValue { c: q(-1), k: Q::new(1, 2) });
        assert_eq!(cv("3/2*q^(2)").to_string(), "3/2*q^2");
        assert!("0".parse::<CharacterValue>().is_err());
        assert!("x".parse::<CharacterValue>().is_err());
        for s in ["1", "q^-3", "-2*q^1/2", "5/3"] {
            assert_eq!(cv(s).to_string().parse::<CharacterValue>().unwrap(), cv(s));
        }
    }

    #[test]
    fn gl2_ladder() {
        let lat = lattice("GL2");
        for bad in ["1,1", "q,1", "3,3*q", "2*q^2,2*q^3"] {
            let l = condition_ladder(&lat, &chi(&lat, bad), 100).unwrap();
            assert!(!l.generic, "{bad}");
            assert!(!l.weakly_generic, "{bad}");
        }
        let l = condition_ladder(&lat, &chi(&lat, "q^2,1"), 100).unwrap();
        assert!(l.generic && l.weakly_normalized_regular && l.normalized_regular && l.regular);
        // Condition (3) fails exactly when chi_1 = chi_2.
        let l = condition_ladder(&lat, &chi(&lat, "5,5"), 100).unwrap();
        assert!(!l.condition3);
        let l = condition_ladder(&lat, &chi(&lat, "5,-5"), 100).unwrap();
        assert!(l.condition3);
    }

    #[test]
    fn sl2_ladder() {
        let lat = lattice("SL2");
        let l = condition_ladder(&lat, &chi(&lat, "-1"), 100).unwrap();
        assert!(l.generic);
        assert!(!l.condition3);
        assert!(!l.condition4);
        assert!(!l.normalized_regular);
        assert!(!l.regular);
        let l = condition_ladder(&lat, &chi(&lat, "q"), 100).unwrap();
        assert!(!l.generic);
        let l = condition_ladder(&lat, &chi(&lat, "2"), 100).unwrap();
        assert!(l.normalized_regular);
    }

    #[test]
    fn unitary_three_orbits() {
        let lat = lattice("2A2");
        let sizes: Vec<usize> = lat.coroot_orbits.iter().map(|o| o.len()).collect();
        assert_eq!(sizes, vec![2, 1]);
        let x = chi(&lat, "q^2");
        let vals: Vec<(CharacterValue, usize)> = lat
            .coroot_orbits
            .iter()
            .map(|o| orbit_test_value(&lat, &x, &coroot_orbit_vectors(&lat, o)).unwrap())
            .collect();
        assert_eq!(vals[0].0, vals[1].0);
        assert_eq!(vals[0].1, 2);
        // The invariant basis is +-(e1 - e3); test value is chi^{+-1}.
        let b = lat.invariant_basis()[0].clone();
        assert!(b == vec![1, 0, -1] || b == vec![-1, 0, 1]);
        let sign = b[0];
        let t_of = |s: &str| {
            let c = chi(&lat, s);
            let l = condition_ladder(&lat, &c, 100).unwrap();
            (l.generic, l.weakly_generic)
        };
        // t = q^{+-1}: fails only the f = 1 orbit; t = q^{+-2}: fails only the f = 2 orbit.
        let pw = |k: i64| format!("q^{}", k * sign);
        assert_eq!(t_of(&pw(1)), (false, true));
        assert_eq!(t_of(&pw(-1)), (false, true));
        assert_eq!(t_of(&pw(2)), (false, false));
        assert_eq!(t_of(&pw(3)), (true, true));
        assert_eq!(t_of("1"), (false, false));
    }

    #[test]
    fn torus_is_vacuous() {
        let lat = lattice("GL1");
        let l = condition_ladder(&lat, &chi(&lat, "3"), 10).unwrap();
        assert!(l.normalized_regular && l.regular);
    }

    #[test]
    fn mu_regular_examples() {
        let lat = lattice("GL2");
        let r = mu_regularity(&lat, &chi(&lat, "q^2,1"), &[1, 0], &MuMode::Strong, 100).unwrap();
        assert!(r.holds);
        let r = mu_regularity(&lat, &chi(&lat, "q,1"), &[1, 0], &MuMode::Strong, 100).unwrap();
        assert!(!r.holds);
        let r = mu_regularity(&lat, &chi(&lat, "q^2,1"), &[3, 1], &MuMode::Decomposed(None), 100).unwrap();
        assert!(r.holds);
        let MuWitness::Decomposition { pieces, central, .. } = r.witness else { panic!() };
        assert_eq!(pieces, vec![(vec![1, 0], 2)]);
        assert_eq!(central, vec![1, 1]);
    }

    #[test]
    fn decompositions() {
        let e8 = lattice("E8");
        assert!(matches!(decompose(&e8, &[1, 0, 0, 0, 0, 0, 0, 0]), Err(Error::NoDecomposition(_))));
        let (p, _) = decompose(&e8, &[0, 0, 0, 0, 0, 0, 0, 2]).unwrap();
        assert_eq!(p, vec![(vec![0, 0, 0, 0, 0, 0, 0, 1], 2)]);
        let sl2 = lattice("SL2");
        let (p, c) = decompose(&sl2, &[3]).unwrap();
        assert_eq!(p, vec![(vec![1], 3)]);
        assert_eq!(c, vec![0]);
        let g2 = lattice("G2");
        let (p, _) = decompose(&g2, &[0, 3]).unwrap();
        assert_eq!(p, vec![(vec![0, 1], 3)]);
        assert!(decompose(&g2, &[1, 1]).is_err());
        let sup = MuMode::Decomposed(Some(vec![(vec![1, 0], 1)]));
        assert!(mu_regularity(&g2, &UnramifiedCharacter::trivial(&g2), &[0, 1], &sup, 100).is_err());
    }

    #[test]
    fn bz_criterion() {
        let lat = lattice("GL2");
        assert!(gln_principal_series_irreducible(&lat, &chi(&lat, "q^2,1")).unwrap());
        assert!(!gln_principal_series_irreducible(&lat, &chi(&lat, "q,1")).unwrap());
        let l3 = lattice("GL3");
        assert!(gln_principal_series_irreducible(&l3, &chi(&l3, "2,3,5")).unwrap());
        assert!(gln_principal_series_irreducible(&lat, &chi(&lat, "1,1")).unwrap());
        let u = lattice("2A2");
        assert!(gln_principal_series_irreducible(&u, &chi(&u, "2")).is_err());
    }

    fn value() -> impl Strategy<Value = CharacterValue> {
        (prop_oneof![Just(1i64), Just(-1), Just(2)], -2i64..3).prop_map(|(c, k)| CharacterValue { c: q(c), k: q(k) })
    }

    proptest! {
        #[test]
        fn ladder_monotone(vals in proptest::collection::vec(value(), 3)) {
            for name in ["GL3", "2A2"] {
                let lat = lattice(name);
                let n = lat.invariant_basis().len();
                let c = UnramifiedCharacter::new(&lat, vals[..n].to_vec()).unwrap();
                let l = condition_ladder(&lat, &c, 1000).unwrap();
                prop_assert!(!l.normalized_regular || l.weakly_normalized_regular);
                prop_assert!(!l.weakly_normalized_regular || l.generic);
                prop_assert!(!l.generic || l.weakly_generic);
                prop_assert!(!l.condition4 || l.regular);
                let li = condition_ladder(&lat, &c.inv(), 1000).unwrap();
                prop_assert_eq!(li.generic, l.generic);
                for w in lat.relative_weyl_elements(1000).unwrap() {
                    let lw = condition_ladder(&lat, &c.twist(&lat, &w), 1000).unwrap();
                    prop_assert_eq!(lw.generic, l.generic);
                }
            }
        }

        #[test]
        fn delta_half_squares(v in proptest::collection::vec(-4i64..5, 3)) {
            let lat = lattice("GL3");
            let d = delta_half(&lat);
            let d2 = d.mul(&d);
            let val = d2.eval(&lat, &v).unwrap();
            prop_assert_eq!(val, CharacterValue::q_pow(q(-dot(&lat.rd.two_rho, &v))));
            prop_assert_eq!(d.eval(&lat, &v).unwrap().k, Q::new(-dot(&lat.rd.two_rho, &v), 2));
        }

        #[test]
        fn evaluation_is_homomorphism(vals in proptest::collection::vec(value(), 1), a in -3i64..4, b in -3i64..4) {
            let lat = lattice("2A2");
            let c = UnramifiedCharacter::new(&lat, vals).unwrap();
            let x = vec![a, 0, -a];
            let y = vec![b, 0, -b];
            let s: Vec<i64> = (0..3).map(|i| x[i] + y[i]).collect();
            prop_assert_eq!(c.eval(&lat, &s).unwrap(), c.eval(&lat, &x).unwrap().mul(c.eval(&lat, &y).unwrap()));
        }
    }
}
