//! Weight multiplicities of highest weight modules of the dual group
//! (Freudenthal's recursion), the Weyl dimension formula, minuscule
//! classification and projection of weights to coinvariant classes.

use crate::error::{check_len, Error, Result};
use crate::galois::{CoinvariantClass, CoinvariantLattice};
use crate::kottwitz::{unramified_point, KottwitzPoint};
use crate::linalg::{add_vec, dot, sub_vec};
use crate::root_datum::RootDatum;
use num_integer::Integer;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub highest: Vec<i64>,
    /// Multiplicities of the dominant weights.
    pub dominant: BTreeMap<Vec<i64>, u64>,
    /// Multiplicities of all weights.
    pub mults: BTreeMap<Vec<i64>, u64>,
    pub dim: u64,
}

impl WeightSystem {
    pub fn mult(&self, v: &[i64]) -> u64 {
        self.mults.get(v).copied().unwrap_or(0)
    }
}

/// Dominant weights of `V_mu`: dominant `lambda <= mu`, found by subtracting
/// positive coroots while staying dominant.
pub fn dominant_weights(rd: &RootDatum, mu: &[i64]) -> Result<Vec<Vec<i64>>> {
    check_len(mu, rd.rank)?;
    if !rd.is_dominant(mu) {
        return Err(Error::NotDominant(format!("{mu:?}")));
    }
    let mut seen = BTreeSet::from([mu.to_vec()]);
    let mut queue = VecDeque::from([mu.to_vec()]);
    while let Some(v) = queue.pop_front() {
        for r in &rd.positive_roots {
            let u = sub_vec(&v, &r.coroot);
            if rd.is_dominant(&u) && !seen.contains(&u) {
                seen.insert(u.clone());
                queue.push_back(u);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort_by_key(|v| -dot(&rd.two_rho, v));
    Ok(out)
}

/// Invariant form `B(x, y) = sum_{alpha > 0} <alpha, x><alpha, y>`.
fn form(rd: &RootDatum, x: &[i64], y: &[i64]) -> i64 {
    rd.positive_roots.iter().map(|r| dot(&r.root, x) * dot(&r.root, y)).sum()
}

pub fn freudenthal(rd: &RootDatum, mu: &[i64], cap: usize) -> Result<WeightSystem> {
    let doms = dominant_weights(rd, mu)?;
    let mut dominant: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    let lookup = |dominant: &BTreeMap<Vec<i64>, u64>, v: &[i64]| -> Option<u64> {
        let (d, _) = rd.dominant_representative(v);
        dominant.get(&d).copied()
    };
    let top = add_vec(mu, &rd.two_rho_check);
    for lam in &doms {
        if lam.as_slice() == mu {
            dominant.insert(lam.clone(), 1);
            continue;
        }
        let mut num: i64 = 0;
        for r in &rd.positive_roots {
            let mut k = 1;
            loop {
                let v: Vec<i64> = lam.iter().zip(&r.coroot).map(|(a, b)| a + k * b).collect();
                match lookup(&dominant, &v) {
                    Some(m) => num += m as i64 * form(rd, &v, &r.coroot),
                    None => break,
                }
                k += 1;
            }
        }
        let den = form(rd, &sub_vec(mu, lam), &add_vec(&top, lam));
        let (m, rem) = (2 * num).div_rem(&den);
        debug_assert_eq!(rem, 0);
        dominant.insert(lam.clone(), m as u64);
    }
    let mut mults = BTreeMap::new();
    let mut dim = 0u64;
    for (lam, m) in &dominant {
        let orbit = rd.weyl_orbit(lam, cap)?;
        if mults.len() + orbit.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        dim += *m * orbit.len() as u64;
        for v in orbit {
            mults.insert(v, *m);
        }
    }
    Ok(WeightSystem { highest: mu.to_vec(), dominant, mults, dim })
}

/// `prod_{alpha > 0} <alpha, mu + rho> / <alpha, rho>`.
pub fn weyl_dimension(rd: &RootDatum, mu: &[i64]) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for r in &rd.positive_roots {
        let a = dot(&r.root, mu) * 2 + dot(&r.root, &rd.two_rho_check);
        let b = dot(&r.root, &rd.two_rho_check);
        num *= a as u128;
        den *= b as u128;
        let g = num.gcd(&den);
        num /= g;
        den /= g;
    }
    num / den
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinusculeClass {
    Minuscule,
    QuasiMinuscule,
    Neither,
}

pub fn classify_minuscule(rd: &RootDatum, mu: &[i64]) -> Result<MinusculeClass> {
    let doms = dominant_weights(rd, mu)?;
    if rd.positive_roots.iter().all(|r| dot(&r.root, mu) <= 1) {
        return Ok(MinusculeClass::Minuscule);
    }
    let central = |v: &[i64]| rd.labels(v).iter().all(|&x| x == 0);
    if doms.len() == 2 && central(&doms[1]) {
        Ok(MinusculeClass::QuasiMinuscule)
    } else {
        Ok(MinusculeClass::Neither)
    }
}

/// Total multiplicity of the weights projecting to `c`.
pub fn coinvariant_weight_space(ws: &WeightSystem, lat: &CoinvariantLattice, c: &CoinvariantClass) -> u64 {
    ws.mults.iter().filter(|(v, _)| lat.project(v) == *c).map(|(_, m)| m).sum()
}

/// Multiplicities of all coinvariant classes met by weights.
pub fn coinvariant_weight_table(ws: &WeightSystem, lat: &CoinvariantLattice) -> BTreeMap<CoinvariantClass, u64> {
    let mut out = BTreeMap::new();
    for (v, m) in &ws.mults {
        *out.entry(lat.project(v)).or_insert(0) += m;
    }
    out
}

/// The distinct dominant classes among the projected weights.
pub fn weight_orbits_to_kottwitz(ws: &WeightSystem, lat: &CoinvariantLattice) -> Vec<KottwitzPoint> {
    let classes: BTreeSet<CoinvariantClass> = ws
        .mults
        .keys()
        .map(|v| lat.project(v))
        .filter(|c| lat.is_dominant(c))
        .collect();
    classes.into_iter().map(|c| unramified_point(lat, &c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::GaloisTwist;
    use crate::root_datum::{build_root_datum, GroupSpec, WeylWord};
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn rd(name: &str) -> RootDatum {
        build_root_datum(&GroupSpec::parse(name).unwrap()).unwrap()
    }

    fn lattice(name: &str) -> CoinvariantLattice {
        let spec = GroupSpec::parse(name).unwrap();
        let r = build_root_datum(&spec).unwrap();
        let tw = match spec.twist {
            Some(k) => GaloisTwist::named(&r, k).unwrap(),
            None => GaloisTwist::trivial(&r),
        };
        CoinvariantLattice::new(r, tw).unwrap()
    }

    /// Kostant's formula: `m(lambda) = sum_w sign(w) P(w(mu + rho) - (lambda + rho))`.
    fn kostant(r: &RootDatum, mu: &[i64], lam: &[i64]) -> i64 {
        let elems = r.minimal_coset_reps(&[]);
        let s = r.semisimple_rank();
        let coroots: Vec<Vec<i64>> = r.positive_roots.iter().map(|x| x.coroot_coeffs.clone()).collect();
        let mut memo = HashMap::new();
        let mut total = 0;
        // Work in labels of 2(mu + rho) to stay integral.
        for w in &elems {
            let top: Vec<i64> = mu.iter().zip(&r.two_rho_check).map(|(a, b)| 2 * a + b).collect();
            let bot: Vec<i64> = lam.iter().zip(&r.two_rho_check).map(|(a, b)| 2 * a + b).collect();
            let diff = sub_vec(&r.apply_cochar(w, &top), &bot);
            let labels = r.labels(&diff);
            // Coefficients in simple coroots: cartan^{-1} applied to labels.
            let c: Vec<_> = (0..s)
                .map(|i| (0..s).map(|j| r.cartan_inv[i][j] * crate::linalg::q(labels[j])).sum::<crate::linalg::Q>())
                .collect();
            if c.iter().any(|x| !x.is_integer() || x.to_integer() % 2 != 0) {
                continue;
            }
            let c: Vec<i64> = c.iter().map(|x| x.to_integer() / 2).collect();
            let sign = if r.length(w) % 2 == 0 { 1 } else { -1 };
            total += sign * partitions(&c, &coroots, 0, &mut memo);
        }
        total
    }

    fn partitions(c: &[i64], gens: &[Vec<i64>], start: usize, memo: &mut HashMap<(Vec<i64>, usize), i64>) -> i64 {
        if c.iter().any(|&x| x < 0) {
            return 0;
        }
        if c.iter().all(|&x| x == 0) {
            return 1;
        }
        if start == gens.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(c.to_vec(), start)) {
            return v;
        }
        let mut total = 0;
        let mut cur = c.to_vec();
        loop {
            total += partitions(&cur, gens, start + 1, memo);
            cur = sub_vec(&cur, &gens[start]);
            if cur.iter().any(|&x| x < 0) {
                break;
            }
        }
        memo.insert((c.to_vec(), start), total);
        total
    }

    #[test]
    fn small_examples() {
        let a1 = rd("A1");
        let ws = freudenthal(&a1, &[2], 1000).unwrap();
        assert_eq!(ws.mults.len(), 3);
        assert_eq!(ws.dim, 3);
        let a2 = rd("A2");
        let ws = freudenthal(&a2, &[1, 1], 1000).unwrap();
        assert_eq!(ws.dim, 8);
        assert_eq!(ws.mult(&[0, 0]), 2);
        let g2 = rd("G2");
        let ws = freudenthal(&g2, &[0, 1], 1000).unwrap();
        assert_eq!(ws.dim, 7);
        assert_eq!(ws.mult(&[0, 0]), 1);
        assert_eq!(freudenthal(&g2, &[1, 0], 1000).unwrap().dim, 14);
        assert_eq!(freudenthal(&rd("E8"), &[0, 0, 0, 0, 0, 0, 0, 1], 10_000).unwrap().dim, 248);
        assert_eq!(weyl_dimension(&rd("E7"), &[0, 0, 0, 0, 0, 0, 1]), 56);
        assert_eq!(weyl_dimension(&rd("F4"), &[1, 0, 0, 0]), 26);
        assert_eq!(weyl_dimension(&rd("F4"), &[0, 0, 0, 1]), 52);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            freudenthal(&rd("E8"), &[0, 0, 0, 0, 0, 0, 0, 1], 100),
            Err(Error::CapExceeded { cap: 100 })
        );
    }

    #[test]
    fn minuscule_classes() {
        assert_eq!(classify_minuscule(&rd("GL3"), &[1, 0, 0]).unwrap(), MinusculeClass::Minuscule);
        assert_eq!(classify_minuscule(&rd("A1"), &[2]).unwrap(), MinusculeClass::QuasiMinuscule);
        assert_eq!(classify_minuscule(&rd("G2"), &[0, 1]).unwrap(), MinusculeClass::QuasiMinuscule);
        assert_eq!(classify_minuscule(&rd("G2"), &[1, 0]).unwrap(), MinusculeClass::Neither);
        assert_eq!(classify_minuscule(&rd("B3"), &[1, 0, 0]).unwrap(), MinusculeClass::Minuscule);
        assert_eq!(classify_minuscule(&rd("GL2"), &[2, 0]).unwrap(), MinusculeClass::QuasiMinuscule);
        assert_eq!(classify_minuscule(&rd("GL3"), &[2, 0, 0]).unwrap(), MinusculeClass::Neither);
        assert_eq!(classify_minuscule(&rd("GL2"), &[1, -1]).unwrap(), MinusculeClass::QuasiMinuscule);
    }

    #[test]
    fn unitary_weight_spaces() {
        let lat = lattice("2A2");
        let ws = freudenthal(&lat.rd, &[1, 0, 0], 100).unwrap();
        let e1 = lat.project(&[1, 0, 0]);
        assert_eq!(e1, lat.project(&[0, 0, -1]));
        assert_eq!(coinvariant_weight_space(&ws, &lat, &e1), 1);
        assert_eq!(coinvariant_weight_space(&ws, &lat, &lat.project(&[0, 1, 0])), 1);
        let total: u64 = coinvariant_weight_table(&ws, &lat).values().sum();
        assert_eq!(total, 3);
        let pts = weight_orbits_to_kottwitz(&ws, &lat);
        assert_eq!(pts.len(), 2);
    }

    #[test]
    fn gl2_correspondence() {
        let lat = lattice("GL2");
        let ws = freudenthal(&lat.rd, &[2, 0], 100).unwrap();
        let cls: Vec<_> = weight_orbits_to_kottwitz(&ws, &lat).into_iter().map(|p| p.cls).collect();
        assert_eq!(cls.len(), 2);
        assert!(cls.contains(&lat.project(&[1, 1])));
    }

    #[test]
    fn kostant_agrees_rank_two() {
        for name in ["A2", "B2", "G2", "C2"] {
            let r = rd(name);
            for a in 0..3 {
                for b in 0..3 {
                    let ws = freudenthal(&r, &[a, b], 10_000).unwrap();
                    assert_eq!(ws.dim as u128, weyl_dimension(&r, &[a, b]));
                    for (lam, m) in &ws.dominant {
                        assert_eq!(*m as i64, kostant(&r, &[a, b], lam), "{name} {a},{b} at {lam:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn weight_differences_along_coroots() {
        // Two weights differing by a multiple of a coroot differ by it once
        // (minuscule) or once or twice (quasi-minuscule).
        for (name, mu, maxk) in [
            ("G2", vec![0, 1], 2),
            ("B2", vec![0, 1], 2),
            ("A2", vec![1, 1], 2),
            ("GL4", vec![1, 1, 0, 0], 1),
            ("E6", vec![1, 0, 0, 0, 0, 0], 1),
        ] {
            let r = rd(name);
            let ws = freudenthal(&r, &mu, 10_000).unwrap();
            for a in ws.mults.keys() {
                for c in &r.positive_roots {
                    for k in 1..=4 {
                        let b: Vec<i64> = a.iter().zip(&c.coroot).map(|(x, y)| x - k * y).collect();
                        if ws.mult(&b) > 0 {
                            assert!(k <= maxk, "{name}: {a:?} - {b:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn weight_differences_need_not_be_roots() {
        // e1 + e2 and e3 + e4 are weights of the minuscule module of GL4 whose
        // difference is not a coroot; likewise two roots of A2 in the adjoint.
        let r = rd("GL4");
        let ws = freudenthal(&r, &[1, 1, 0, 0], 100).unwrap();
        assert_eq!(ws.mult(&[0, 0, 1, 1]), 1);
        assert!(!r.positive_roots.iter().any(|c| c.coroot == vec![1, 1, -1, -1]));
        let a2 = rd("A2");
        let d = sub_vec(&a2.simple_coroots[1], &a2.simple_coroots[0]);
        assert!(!a2.positive_roots.iter().any(|c| c.coroot == d || sub_vec(&[0, 0], &c.coroot) == d));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn weight_system_invariants(a in 0i64..3, b in 0i64..3, c in 0i64..2) {
            for (name, mu) in [("B3", vec![a, b, c]), ("C3", vec![c, a, b]), ("A3", vec![a, c, b])] {
                let r = rd(name);
                let ws = freudenthal(&r, &mu, 100_000).unwrap();
                prop_assert_eq!(ws.mult(&mu), 1);
                prop_assert_eq!(ws.dim as u128, weyl_dimension(&r, &mu));
                prop_assert_eq!(ws.mults.values().sum::<u64>(), ws.dim);
                for (v, m) in ws.mults.iter().take(40) {
                    for i in 0..r.semisimple_rank() {
                        let w = WeylWord::new(vec![i]);
                        prop_assert_eq!(ws.mult(&r.apply_cochar(&w, v)), *m);
                    }
                    let d: Vec<_> = sub_vec(&mu, v).into_iter().map(crate::linalg::q).collect();
                    let coeffs = r.coroot_coefficients(&d).unwrap();
                    prop_assert!(coeffs.iter().all(|x| x.is_integer() && *x >= crate::linalg::q(0)));
                }
            }
        }
    }
}
