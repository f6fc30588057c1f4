//! Unramified Kottwitz classes: slopes, Kottwitz invariants, HN-dominant
//! reductions, the sets `B(G, mu)_un`, GL_n Newton polygons, and the
//! dimension bookkeeping of the components of `Bun_T` over a class.

use crate::error::{check_len, Error, Result};
use crate::galois::{CoinvariantClass, CoinvariantLattice};
use crate::linalg::{dot, q, GroupElement, Q};
use crate::root_datum::{TypeTag, WeylWord};
use num_traits::Zero;

/// An element of `B(G)_un` with the data attached to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KottwitzPoint {
    /// The dominant coinvariant class.
    pub cls: CoinvariantClass,
    /// Dominant slope `nu_b`.
    pub slope: Vec<Q>,
    pub kappa: GroupElement,
    /// The HN-dominant reduction `b_T`, the unique anti-dominant class over `cls`.
    pub hn_reduction: CoinvariantClass,
    /// Relative simple orbits centralizing `nu_b` (the Levi `M_b`).
    pub levi: Vec<usize>,
    /// Relative simple orbits centralizing the HN slope `-nu_{b_T}`; this is
    /// the stabilizer of `b_T` and equals `w_0 M_b w_0`.
    pub hn_levi: Vec<usize>,
    /// Minimal representatives of `W^sigma / W_{hn_levi}`; `w -> w(b_T)`
    /// enumerates the fiber over `cls` without repetition.
    pub coset_reps: Vec<WeylWord>,
}

impl KottwitzPoint {
    /// `-nu_{b_T}`, the dominant slope vector of the HN filtration.
    pub fn hn_slope(&self, lat: &CoinvariantLattice) -> Vec<Q> {
        lat.slope(&self.hn_reduction).into_iter().map(|x| -x).collect()
    }

    pub fn is_central(&self, lat: &CoinvariantLattice) -> bool {
        self.levi.len() == lat.orbits.len()
    }

    /// `w(b_T)`.
    pub fn fiber_element(&self, lat: &CoinvariantLattice, w: &WeylWord) -> CoinvariantClass {
        lat.apply(w, &self.hn_reduction)
    }

    /// All classes of `X_*(T)_Gamma` over `cls`.
    pub fn fiber(&self, lat: &CoinvariantLattice) -> Vec<CoinvariantClass> {
        self.coset_reps.iter().map(|w| self.fiber_element(lat, w)).collect()
    }

    /// `<2 rho, nu_b>`, the degree shift attached to the class.
    pub fn degree(&self, lat: &CoinvariantLattice) -> i64 {
        component_dimension(lat, &self.cls)
    }
}

pub fn unramified_point(lat: &CoinvariantLattice, c: &CoinvariantClass) -> KottwitzPoint {
    let (cls, _) = lat.dominant_representative(c);
    let slope = lat.slope(&cls);
    let w0 = lat.rd.longest_element();
    let hn_reduction = lat.apply(&w0, &cls);
    let levi = lat.centralizer_orbits(&slope);
    let hn: Vec<Q> = lat.slope(&hn_reduction).into_iter().map(|x| -x).collect();
    let hn_levi = lat.centralizer_orbits(&hn);
    let coset_reps = lat.relative_coset_reps(&hn_levi, usize::MAX).expect("uncapped");
    KottwitzPoint { kappa: lat.kappa(&cls), cls, slope, hn_reduction, levi, hn_levi, coset_reps }
}

/// The dominant classes `lambda <= mu` in `X_*(T)_Gamma`, i.e. `B(G, mu)_un`.
/// Ordered by increasing distance from `mu`, so the mu-ordinary class comes first.
pub fn enumerate_bgmu_un(lat: &CoinvariantLattice, mu: &[i64]) -> Result<Vec<KottwitzPoint>> {
    check_len(mu, lat.rank())?;
    if !lat.rd.is_dominant(mu) {
        return Err(Error::NotDominant(format!("{mu:?}")));
    }
    let rd = &lat.rd;
    let w0 = rd.longest_element();
    let low = rd.apply_cochar(&w0, mu);
    let span = lat.average(&crate::linalg::sub_vec(mu, &low));
    let coeffs = rd.coroot_coefficients(&span).expect("mu - w0 mu lies in the coroot span");
    let bounds: Vec<i64> = lat
        .orbits
        .iter()
        .map(|o| (coeffs[o[0]] * q(o.len() as i64)).floor().to_integer())
        .collect();
    let mut found: Vec<(i64, Vec<i64>, CoinvariantClass)> = Vec::new();
    let mut n = vec![0i64; bounds.len()];
    loop {
        let mut v = mu.to_vec();
        for (o, &k) in lat.orbits.iter().zip(&n) {
            for (x, y) in v.iter_mut().zip(&rd.simple_coroots[o[0]]) {
                *x -= k * y;
            }
        }
        let c = lat.project(&v);
        if lat.is_dominant(&c) {
            found.push((n.iter().sum(), n.clone(), c));
        }
        // Odometer over the box of coefficients.
        let mut i = 0;
        while i < n.len() {
            if n[i] < bounds[i] {
                n[i] += 1;
                break;
            }
            n[i] = 0;
            i += 1;
        }
        if i == n.len() {
            break;
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
    Ok(found.into_iter().map(|(_, _, c)| unramified_point(lat, &c)).collect())
}

/// The mu-ordinary point and the basic class `mu^flat` in `pi_1(G)_Gamma`.
pub fn mu_ordinary_and_basic(
    lat: &CoinvariantLattice,
    mu: &[i64],
) -> Result<(KottwitzPoint, GroupElement)> {
    let all = enumerate_bgmu_un(lat, mu)?;
    let first = all.into_iter().next().expect("mu itself is always present");
    let kappa = first.kappa.clone();
    Ok((first, kappa))
}

/// `d = <2 rho, c>`, the dimension attached to a component of `Bun_T`.
pub fn component_dimension(lat: &CoinvariantLattice, c: &CoinvariantClass) -> i64 {
    dot(&lat.rd.two_rho, &lat.lift(c))
}

/// `<2 rho, nu_b> - 2 <2 rho^w, -nu_{b_T}>` where `2 rho^w` sums the positive
/// roots kept positive by `w`. Equals `component_dimension` of `w(b_T)`.
pub fn dimension_via_reduction(lat: &CoinvariantLattice, pt: &KottwitzPoint, w: &WeylWord) -> Q {
    let rd = &lat.rd;
    let inv = rd.inversions(w);
    let mut rho_w = vec![0; rd.rank];
    for (k, r) in rd.positive_roots.iter().enumerate() {
        if !inv.contains(&k) {
            for (x, y) in rho_w.iter_mut().zip(&r.root) {
                *x += y;
            }
        }
    }
    let hn = pt.hn_slope(lat);
    dot(&rd.two_rho, &pt.slope) - q(2) * dot(&rho_w, &hn)
}

/// Characters (as sums of roots) splitting `delta_B^w` by the sign of `<alpha, nu>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusDecomposition {
    pub positive: Vec<i64>,
    pub zero: Vec<i64>,
    pub negative: Vec<i64>,
}

/// Split `w(2 rho)` into the roots centralizing the HN slope, those kept
/// positive by `w`, and those sent negative.
pub fn modulus_decomposition(
    lat: &CoinvariantLattice,
    w: &WeylWord,
    pt: &KottwitzPoint,
) -> Result<ModulusDecomposition> {
    let rd = &lat.rd;
    let hn = pt.hn_slope(lat);
    let r = rd.rank;
    let mut out = ModulusDecomposition { positive: vec![0; r], zero: vec![0; r], negative: vec![0; r] };
    for (k, root) in rd.positive_roots.iter().enumerate() {
        let (sign, j) = rd.act_on_root(w, k);
        let central = dot(&root.root, &hn).is_zero();
        if central && sign < 0 {
            return Err(Error::Precondition(format!("{w} is not minimal modulo the Levi of the point")));
        }
        let target = if central {
            &mut out.zero
        } else if sign > 0 {
            &mut out.positive
        } else {
            &mut out.negative
        };
        for (x, y) in target.iter_mut().zip(&rd.positive_roots[j].root) {
            *x += sign * y;
        }
    }
    Ok(out)
}

/// Newton polygons of `B(GL_n, mu)` as non-increasing slope vectors, listed
/// in decreasing lexicographic order (mu-ordinary first, basic last).
pub fn bgmu_gln(n: usize, mu: &[i64]) -> Result<Vec<Vec<Q>>> {
    check_len(mu, n)?;
    if mu.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::NotDominant(format!("{mu:?}")));
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut partial = vec![0i64; n + 1];
    for i in 0..n {
        partial[i + 1] = partial[i] + mu[i];
    }
    let mut out = Vec::new();
    let mut segs = Vec::new();
    polygon_rec(n, mu, &partial, 0, 0, None, &mut segs, &mut out);
    out.sort_by(|a: &Vec<Q>, b| b.cmp(a));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn polygon_rec(
    n: usize,
    mu: &[i64],
    partial: &[i64],
    x0: usize,
    s0: i64,
    last: Option<Q>,
    segs: &mut Vec<(usize, i64)>,
    out: &mut Vec<Vec<Q>>,
) {
    if x0 == n {
        if s0 == partial[n] {
            let mut v = Vec::with_capacity(n);
            for &(m, d) in segs.iter() {
                v.extend(std::iter::repeat(Q::new(d, m as i64)).take(m));
            }
            out.push(v);
        }
        return;
    }
    for m in 1..=n - x0 {
        let (lo, hi) = (m as i64 * mu[n - 1], m as i64 * mu[0]);
        for d in lo..=hi {
            let slope = Q::new(d, m as i64);
            if last.is_some_and(|l| slope >= l) {
                continue;
            }
            if s0 + d > partial[x0 + m] {
                continue;
            }
            if x0 + m == n && s0 + d != partial[n] {
                continue;
            }
            segs.push((m, d));
            polygon_rec(n, mu, partial, x0 + m, s0 + d, Some(slope), segs, out);
            segs.pop();
        }
    }
}

/// Whether the lattice is GL_n with the trivial twist.
pub fn is_split_gl(lat: &CoinvariantLattice) -> bool {
    matches!(lat.rd.tag(), TypeTag::GL(_)) && lat.twist.is_trivial() && lat.rd.spec.central_rank == 0
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

    #[test]
    fn gl2_points() {
        let lat = lattice("GL2");
        let pt = unramified_point(&lat, &lat.project(&[0, 1]));
        assert_eq!(pt.slope, vec![q(1), q(0)]);
        assert_eq!(pt.hn_reduction, lat.project(&[0, 1]));
        assert!(pt.levi.is_empty());
        assert_eq!(pt.coset_reps.len(), 2);
        let central = unramified_point(&lat, &lat.project(&[3, 3]));
        assert_eq!(central.levi, vec![0]);
        assert_eq!(central.coset_reps, vec![WeylWord::identity()]);
        assert_eq!(enumerate_bgmu_un(&lat, &[1, 0]).unwrap().len(), 1);
        let two: Vec<_> = enumerate_bgmu_un(&lat, &[2, 0]).unwrap().into_iter().map(|p| p.cls).collect();
        assert_eq!(two, vec![lat.project(&[2, 0]), lat.project(&[1, 1])]);
        let (ord, basic) = mu_ordinary_and_basic(&lat, &[1, 0]).unwrap();
        assert_eq!(ord.slope, vec![q(1), q(0)]);
        assert_eq!(basic.free, vec![1]);
    }

    #[test]
    fn gl2_dimensions() {
        let lat = lattice("GL2");
        for (d, e) in [(3, 1), (5, -2), (0, -1)] {
            assert_eq!(component_dimension(&lat, &lat.project(&[d, d])), 0);
            assert_eq!(component_dimension(&lat, &lat.project(&[-d, -e])), e - d);
        }
        assert_eq!(component_dimension(&lat, &lat.project(&[1, -1])), 2);
    }

    #[test]
    fn gl2_modulus() {
        let lat = lattice("GL2");
        let pt = unramified_point(&lat, &lat.project(&[1, 0]));
        let id = modulus_decomposition(&lat, &WeylWord::identity(), &pt).unwrap();
        assert_eq!(id.positive, vec![1, -1]);
        assert_eq!(id.negative, vec![0, 0]);
        let w0 = modulus_decomposition(&lat, &WeylWord::new(vec![0]), &pt).unwrap();
        assert_eq!(w0.positive, vec![0, 0]);
        assert_eq!(w0.zero, vec![0, 0]);
        assert_eq!(w0.negative, vec![-1, 1]);
        let c = unramified_point(&lat, &lat.project(&[2, 2]));
        assert_eq!(modulus_decomposition(&lat, &WeylWord::identity(), &c).unwrap().zero, vec![1, -1]);
        assert!(modulus_decomposition(&lat, &WeylWord::new(vec![0]), &c).is_err());
    }

    #[test]
    fn polygons() {
        let h = |a: i64, b: i64| Q::new(a, b);
        assert_eq!(bgmu_gln(2, &[1, 0]).unwrap(), vec![vec![q(1), q(0)], vec![h(1, 2), h(1, 2)]]);
        assert_eq!(bgmu_gln(2, &[2, 0]).unwrap(), vec![vec![q(2), q(0)], vec![q(1), q(1)]]);
        assert_eq!(
            bgmu_gln(3, &[1, 1, 0]).unwrap(),
            vec![
                vec![q(1), q(1), q(0)],
                vec![q(1), h(1, 2), h(1, 2)],
                vec![h(2, 3), h(2, 3), h(2, 3)]
            ]
        );
        assert!(bgmu_gln(2, &[0, 1]).is_err());
    }

    #[test]
    fn gl3_fiber_uses_stabilizer_of_reduction() {
        let lat = lattice("GL3");
        let pt = unramified_point(&lat, &lat.project(&[2, 1, 1]));
        assert_eq!(pt.levi, vec![1]);
        assert_eq!(pt.hn_levi, vec![0]);
        let mut fiber = pt.fiber(&lat);
        assert_eq!(fiber.len(), 3);
        fiber.sort();
        fiber.dedup();
        assert_eq!(fiber.len(), 3);
    }

    #[test]
    fn unitary_three_points() {
        let lat = lattice("2A2");
        let pts = enumerate_bgmu_un(&lat, &[1, 0, 0]).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].cls, lat.project(&[1, 0, 0]));
        assert!(pts[1].is_central(&lat));
        assert_eq!(pts[0].coset_reps.len(), 2);
    }

    fn sample_classes(name: &str) -> (CoinvariantLattice, impl Strategy<Value = Vec<i64>>) {
        let lat = lattice(name);
        let r = lat.rank();
        (lat, proptest::collection::vec(-3i64..4, r))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn fiber_and_dimension_identity(v in proptest::collection::vec(-3i64..4, 4)) {
            for name in ["GL4", "2A3", "B4", "D4", "3D4", "F4"] {
                let (lat, _) = sample_classes(name);
                let pt = unramified_point(&lat, &lat.project(&v[..lat.rank()]));
                let fiber = pt.fiber(&lat);
                let mut uniq = fiber.clone();
                uniq.sort();
                uniq.dedup();
                prop_assert_eq!(uniq.len(), fiber.len());
                for (w, c) in pt.coset_reps.iter().zip(&fiber) {
                    prop_assert_eq!(&lat.dominant_representative(c).0, &pt.cls);
                    prop_assert_eq!(q(component_dimension(&lat, c)), dimension_via_reduction(&lat, &pt, w));
                    let m = modulus_decomposition(&lat, w, &pt).unwrap();
                    let total: Vec<i64> = (0..lat.rank()).map(|k| m.positive[k] + m.zero[k] + m.negative[k]).collect();
                    prop_assert_eq!(total, lat.rd.apply_char(w, &lat.rd.two_rho));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn slope_well_defined(v in proptest::collection::vec(-4i64..5, 3), u in proptest::collection::vec(-4i64..5, 3)) {
            let lat = lattice("2A2");
            let su = crate::linalg::mat_vec(&lat.twist.sigma, &u);
            let v2: Vec<i64> = (0..3).map(|i| v[i] + su[i] - u[i]).collect();
            prop_assert_eq!(lat.average(&v), lat.average(&v2));
        }

        #[test]
        fn order_compatibility(a in proptest::collection::vec(-3i64..4, 3), b in proptest::collection::vec(-3i64..4, 3)) {
            let lat = lattice("2A2");
            let pa = unramified_point(&lat, &lat.project(&a));
            let pb = unramified_point(&lat, &lat.project(&b));
            if lat.leq(&pa.cls, &pb.cls) {
                prop_assert_eq!(&pa.kappa, &pb.kappa);
                let diff: Vec<Q> = pb.slope.iter().zip(&pa.slope).map(|(x, y)| x - y).collect();
                let c = lat.rd.coroot_coefficients(&diff).unwrap();
                prop_assert!(c.iter().all(|x| *x >= q(0)));
            }
        }

        #[test]
        fn gl_polygons_match_unramified(mu in proptest::collection::vec(-2i64..3, 3)) {
            let mut mu = mu;
            mu.sort_by(|a, b| b.cmp(a));
            let lat = lattice("GL3");
            let mut integral: Vec<Vec<Q>> = bgmu_gln(3, &mu).unwrap().into_iter().filter(|p| p.iter().all(|x| x.is_integer())).collect();
            let mut un: Vec<Vec<Q>> = enumerate_bgmu_un(&lat, &mu).unwrap().into_iter().map(|p| p.slope).collect();
            integral.sort();
            un.sort();
            prop_assert_eq!(integral, un);
        }
    }
}
