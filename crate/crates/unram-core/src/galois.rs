//! Frobenius twists of a root datum, the coinvariant lattice `X_*(T)_Gamma`,
//! the relative Weyl group and the Kottwitz target `pi_1(G)_Gamma`.

use crate::error::{Error, Result};
use crate::linalg::{
    add_vec, dot, identity, mat_mul, mat_vec, q, smith, sub_vec, transpose, GroupElement, Mat,
    Quotient, Q,
};
use crate::root_datum::{coset_bfs, CartanType, Lattice, RootDatum, TypeTag, WeylWord};
use std::collections::HashMap;

/// A class in `X_*(T)_Gamma`: free coordinates followed by torsion residues.
pub type CoinvariantClass = GroupElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistKind {
    /// The unitary twist of A_n: `e_i -> -e_{n+1-i}` on GL_n coordinates.
    Unitary,
    /// Swap of the two short-leg nodes of D_n.
    DiagramD,
    /// Order three rotation of the D_4 legs.
    Triality,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisTwist {
    /// Action of Frobenius on cocharacters (column convention).
    pub sigma: Mat,
    pub order: usize,
    /// Induced permutation of simple nodes.
    pub perm: Vec<usize>,
}

impl GaloisTwist {
    pub fn trivial(rd: &RootDatum) -> GaloisTwist {
        GaloisTwist {
            sigma: identity(rd.rank),
            order: 1,
            perm: (0..rd.semisimple_rank()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Validate a matrix as an automorphism of the based root datum of finite order.
    pub fn from_matrix(rd: &RootDatum, sigma: Mat) -> Result<GaloisTwist> {
        let n = rd.rank;
        if sigma.len() != n || sigma.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTwist(format!("expected a {n}x{n} matrix")));
        }
        let s = rd.semisimple_rank();
        let mut perm = Vec::with_capacity(s);
        for j in 0..s {
            let img = mat_vec(&sigma, &rd.simple_coroots[j]);
            let k = rd.simple_coroots.iter().position(|c| *c == img).ok_or_else(|| {
                Error::InvalidTwist(format!("simple coroot {} is not sent to a simple coroot", j + 1))
            })?;
            perm.push(k);
        }
        let st = transpose(&sigma);
        for j in 0..s {
            if mat_vec(&st, &rd.simple_roots[perm[j]]) != rd.simple_roots[j] {
                return Err(Error::InvalidTwist(format!(
                    "simple root {} is not sent to a simple root",
                    j + 1
                )));
            }
        }
        let id = identity(n);
        let mut p = sigma.clone();
        let mut order = 1;
        while p != id {
            order += 1;
            if order > 24 {
                return Err(Error::InvalidTwist("twist does not have finite order".into()));
            }
            p = mat_mul(&sigma, &p);
        }
        Ok(GaloisTwist { sigma, order, perm })
    }

    /// The standard twist of the given kind on `rd`.
    pub fn named(rd: &RootDatum, kind: TwistKind) -> Result<GaloisTwist> {
        let n = rd.rank;
        let wrong = |what: &str| Error::InvalidTwist(format!("{what} twist does not apply to {}", rd.tag()));
        let mut sigma = identity(n);
        match (kind, rd.tag()) {
            (TwistKind::Unitary, TypeTag::GL(m)) if m >= 2 => {
                for i in 0..m {
                    for j in 0..m {
                        sigma[i][j] = if i + j + 1 == m { -1 } else { 0 };
                    }
                }
            }
            (TwistKind::Unitary, TypeTag::Simple { kind: CartanType::A, rank }) if rank >= 2 => {
                permute_nodes(&mut sigma, &(0..rank).map(|i| rank - 1 - i).collect::<Vec<_>>());
            }
            (TwistKind::DiagramD, TypeTag::Simple { kind: CartanType::D, rank }) => {
                let mut p: Vec<usize> = (0..rank).collect();
                p.swap(rank - 2, rank - 1);
                permute_nodes(&mut sigma, &p);
            }
            (TwistKind::Triality, TypeTag::Simple { kind: CartanType::D, rank: 4 }) => {
                permute_nodes(&mut sigma, &[2, 1, 3, 0]);
            }
            (TwistKind::Unitary, _) => return Err(wrong("unitary")),
            (TwistKind::DiagramD, _) => return Err(wrong("2D")),
            (TwistKind::Triality, _) => return Err(wrong("triality")),
        }
        if rd.spec.lattice == Lattice::General && kind != TwistKind::Unitary {
            return Err(wrong("diagram"));
        }
        GaloisTwist::from_matrix(rd, sigma)
    }

    /// Parse `none`, `2A`, `2D`, `3D4` or a JSON integer matrix.
    pub fn parse(rd: &RootDatum, s: &str) -> Result<GaloisTwist> {
        let s = s.trim();
        match s {
            "" | "none" | "1" => Ok(GaloisTwist::trivial(rd)),
            "2A" => GaloisTwist::named(rd, TwistKind::Unitary),
            "2D" => GaloisTwist::named(rd, TwistKind::DiagramD),
            "3D" | "3D4" => GaloisTwist::named(rd, TwistKind::Triality),
            _ if s.starts_with('[') => GaloisTwist::from_matrix(rd, parse_int_matrix(s)?),
            _ => Err(Error::InvalidTwist(format!("unknown twist `{s}`"))),
        }
    }
}

fn permute_nodes(sigma: &mut Mat, p: &[usize]) {
    for (i, &pi) in p.iter().enumerate() {
        for row in sigma.iter_mut() {
            row[i] = 0;
        }
        sigma[pi][i] = 1;
    }
}

fn parse_int_matrix(s: &str) -> Result<Mat> {
    let err = || Error::Parse(format!("cannot parse matrix `{s}`"));
    let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(err)?;
    let mut rows = Vec::new();
    for chunk in inner.split(']') {
        let chunk = chunk.trim().trim_start_matches(',').trim();
        if chunk.is_empty() {
            continue;
        }
        let body = chunk.strip_prefix('[').ok_or_else(err)?;
        let row: Vec<i64> = body
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse().map_err(|_| err()))
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// The coinvariant lattice of a twisted root datum with its relative structure.
#[derive(Clone, Debug)]
pub struct CoinvariantLattice {
    pub rd: RootDatum,
    pub twist: GaloisTwist,
    powers: Vec<Mat>,
    quotient: Quotient,
    pi1: Quotient,
    invariant_basis: Vec<Vec<i64>>,
    invariant_coords: Mat,
    /// Frobenius orbits of simple nodes, sorted by smallest member.
    pub orbits: Vec<Vec<usize>>,
    /// Longest element of the parabolic of each orbit; these generate `W^sigma`.
    pub rel_gens: Vec<WeylWord>,
    /// Frobenius orbits of positive coroots (indices into `rd.positive_roots`).
    pub coroot_orbits: Vec<Vec<usize>>,
}

pub fn coinvariants(rd: &RootDatum, twist: &GaloisTwist) -> Result<CoinvariantLattice> {
    CoinvariantLattice::new(rd.clone(), twist.clone())
}

impl CoinvariantLattice {
    pub fn new(rd: RootDatum, twist: GaloisTwist) -> Result<CoinvariantLattice> {
        let twist = GaloisTwist::from_matrix(&rd, twist.sigma)?;
        let n = rd.rank;
        let mut powers = vec![identity(n)];
        for k in 1..twist.order {
            powers.push(mat_mul(&twist.sigma, &powers[k - 1]));
        }
        let sm1: Mat = (0..n)
            .map(|i| (0..n).map(|j| twist.sigma[i][j] - i64::from(i == j)).collect())
            .collect();
        let cols: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| sm1[i][j]).collect()).collect();
        let quotient = Quotient::new(n, &cols);
        let mut pi_gens = cols.clone();
        pi_gens.extend(rd.simple_coroots.iter().cloned());
        let pi1 = Quotient::new(n, &pi_gens);
        let s = smith(&sm1, n);
        let invariant_basis: Vec<Vec<i64>> =
            (s.rank..n).map(|j| (0..n).map(|i| s.v[i][j]).collect()).collect();
        let invariant_coords: Mat = (s.rank..n).map(|i| s.v_inv[i].clone()).collect();

        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for i in 0..rd.semisimple_rank() {
            if orbits.iter().any(|o| o.contains(&i)) {
                continue;
            }
            let mut o = vec![i];
            let mut j = twist.perm[i];
            while j != i {
                o.push(j);
                j = twist.perm[j];
            }
            o.sort();
            orbits.push(o);
        }
        let rel_gens = orbits.iter().map(|o| rd.longest_in(o)).collect();

        let index: HashMap<Vec<i64>, usize> =
            rd.positive_roots.iter().enumerate().map(|(k, r)| (r.coroot.clone(), k)).collect();
        let mut coroot_orbits: Vec<Vec<usize>> = Vec::new();
        let mut done = vec![false; rd.positive_roots.len()];
        for k in 0..rd.positive_roots.len() {
            if done[k] {
                continue;
            }
            let mut o = vec![k];
            done[k] = true;
            let mut v = mat_vec(&twist.sigma, &rd.positive_roots[k].coroot);
            loop {
                let j = *index.get(&v).ok_or_else(|| {
                    Error::InvalidTwist("twist does not preserve positive coroots".into())
                })?;
                if j == k {
                    break;
                }
                done[j] = true;
                o.push(j);
                v = mat_vec(&twist.sigma, &v);
            }
            coroot_orbits.push(o);
        }
        Ok(CoinvariantLattice {
            rd,
            twist,
            powers,
            quotient,
            pi1,
            invariant_basis,
            invariant_coords,
            orbits,
            rel_gens,
            coroot_orbits,
        })
    }

    pub fn rank(&self) -> usize {
        self.rd.rank
    }

    pub fn free_rank(&self) -> usize {
        self.quotient.free_rank()
    }

    pub fn torsion(&self) -> &[i64] {
        &self.quotient.torsion
    }

    pub fn describe(&self) -> String {
        self.quotient.describe()
    }

    pub fn describe_pi1(&self) -> String {
        self.pi1.describe()
    }

    pub fn project(&self, v: &[i64]) -> CoinvariantClass {
        self.quotient.project(v)
    }

    pub fn lift(&self, c: &CoinvariantClass) -> Vec<i64> {
        self.quotient.lift(c)
    }

    pub fn zero(&self) -> CoinvariantClass {
        self.quotient.zero()
    }

    pub fn add(&self, a: &CoinvariantClass, b: &CoinvariantClass) -> CoinvariantClass {
        self.quotient.add(a, b)
    }

    pub fn sub(&self, a: &CoinvariantClass, b: &CoinvariantClass) -> CoinvariantClass {
        self.quotient.add(a, &self.quotient.neg(b))
    }

    pub fn neg(&self, a: &CoinvariantClass) -> CoinvariantClass {
        self.quotient.neg(a)
    }

    /// The Kottwitz invariant of a class, in `pi_1(G)_Gamma`.
    pub fn kappa(&self, c: &CoinvariantClass) -> GroupElement {
        self.pi1.project(&self.lift(c))
    }

    pub fn sigma_power(&self, k: usize) -> &Mat {
        &self.powers[k % self.twist.order]
    }

    /// The norm `sum_k sigma^k v`.
    pub fn norm(&self, v: &[i64]) -> Vec<i64> {
        let mut s = vec![0; self.rank()];
        for p in &self.powers {
            s = add_vec(&s, &mat_vec(p, v));
        }
        s
    }

    /// Average of the Frobenius orbit of `v`; depends only on the class of `v`.
    pub fn average(&self, v: &[i64]) -> Vec<Q> {
        let n = self.twist.order as i64;
        self.norm(v).into_iter().map(|x| Q::new(x, n)).collect()
    }

    /// The slope (rational average) of a class.
    pub fn slope(&self, c: &CoinvariantClass) -> Vec<Q> {
        self.average(&self.lift(c))
    }

    /// Whether a character is fixed by Frobenius.
    pub fn is_invariant_char(&self, l: &[i64]) -> bool {
        mat_vec(&transpose(&self.twist.sigma), l) == l
    }

    /// Pairing of a Frobenius invariant character with a class.
    pub fn pairing(&self, l: &[i64], c: &CoinvariantClass) -> Result<i64> {
        if !self.is_invariant_char(l) {
            return Err(Error::Precondition("character is not Frobenius invariant".into()));
        }
        Ok(dot(l, &self.lift(c)))
    }

    /// Basis of `X_*(A) = X_*(T)^sigma`.
    pub fn invariant_basis(&self) -> &[Vec<i64>] {
        &self.invariant_basis
    }

    /// Coordinates of an invariant cocharacter in `invariant_basis`.
    pub fn invariant_coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        if mat_vec(&self.twist.sigma, v) != v {
            return None;
        }
        Some(mat_vec(&self.invariant_coords, v))
    }

    /// Dominance of a class: its slope pairs nonnegatively with every simple root.
    pub fn is_dominant(&self, c: &CoinvariantClass) -> bool {
        self.rd.is_dominant(&self.slope(c))
    }

    pub fn apply(&self, w: &WeylWord, c: &CoinvariantClass) -> CoinvariantClass {
        self.project(&self.rd.apply_cochar(w, &self.lift(c)))
    }

    /// Dominant representative of the relative Weyl orbit of a class, and the
    /// element of `W^sigma` reaching it.
    pub fn dominant_representative(&self, c: &CoinvariantClass) -> (CoinvariantClass, WeylWord) {
        let mut v = self.lift(c);
        let mut w = WeylWord::identity();
        loop {
            let labels = self.rd.labels(&self.norm(&v));
            let Some(j) = self.orbits.iter().position(|o| labels[o[0]] < 0) else { break };
            v = self.rd.apply_cochar(&self.rel_gens[j], &v);
            w = self.rel_gens[j].compose(&w);
        }
        (self.project(&v), w)
    }

    /// Image of the simple coroots of an orbit in the coinvariants.
    pub fn simple_class(&self, orbit: usize) -> CoinvariantClass {
        self.project(&self.rd.simple_coroots[self.orbits[orbit][0]])
    }

    /// Nonnegative integer combination `n` of relative simple coroots with
    /// `b - a = sum_J n_J alpha_J`, if one exists.
    pub fn difference_in_cone(&self, a: &CoinvariantClass, b: &CoinvariantClass) -> Option<Vec<i64>> {
        let d = sub_vec(&self.lift(b), &self.lift(a));
        let coeffs = self.rd.coroot_coefficients(&self.average(&d))?;
        let mut n = Vec::with_capacity(self.orbits.len());
        for o in &self.orbits {
            let x = coeffs[o[0]] * q(o.len() as i64);
            if !x.is_integer() || x < q(0) {
                return None;
            }
            n.push(x.to_integer());
        }
        let mut s = vec![0; self.rank()];
        for (o, &k) in self.orbits.iter().zip(&n) {
            for (x, y) in s.iter_mut().zip(&self.rd.simple_coroots[o[0]]) {
                *x += k * y;
            }
        }
        (self.project(&s) == self.project(&d)).then_some(n)
    }

    /// The partial order `a <= b` on classes.
    pub fn leq(&self, a: &CoinvariantClass, b: &CoinvariantClass) -> bool {
        self.difference_in_cone(a, b).is_some()
    }

    /// Every element of `W^sigma`, as words in the relative generators.
    pub fn relative_weyl_elements(&self, cap: usize) -> Result<Vec<WeylWord>> {
        self.relative_coset_reps(&[], cap)
    }

    /// Minimal representatives of `W^sigma / W_L` where `L` is a set of orbit indices.
    pub fn relative_coset_reps(&self, levi: &[usize], cap: usize) -> Result<Vec<WeylWord>> {
        let mut start = vec![1i64; self.rd.semisimple_rank()];
        for &j in levi {
            for &i in &self.orbits[j] {
                start[i] = 0;
            }
        }
        let gens: Vec<(Vec<usize>, WeylWord)> =
            self.orbits.iter().cloned().zip(self.rel_gens.iter().cloned()).collect();
        coset_bfs(&self.rd.cartan, &gens, start, cap)
    }

    /// Relative orbits whose simple roots pair to zero with a rational cocharacter.
    pub fn centralizer_orbits(&self, v: &[Q]) -> Vec<usize> {
        let labels = self.rd.labels(v);
        (0..self.orbits.len()).filter(|&j| labels[self.orbits[j][0]] == q(0)).collect()
    }
}

pub fn project_to_coinvariants(lat: &CoinvariantLattice, v: &[i64]) -> CoinvariantClass {
    lat.project(v)
}

pub fn coinvariant_pairing(lat: &CoinvariantLattice, l: &[i64], c: &CoinvariantClass) -> Result<i64> {
    lat.pairing(l, c)
}

pub fn coinvariant_leq(lat: &CoinvariantLattice, a: &CoinvariantClass, b: &CoinvariantClass) -> bool {
    lat.leq(a, b)
}

pub fn is_dominant_coinvariant(lat: &CoinvariantLattice, c: &CoinvariantClass) -> bool {
    lat.is_dominant(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_root_datum, GroupSpec};
    use proptest::prelude::*;

    pub(crate) fn lattice(name: &str) -> CoinvariantLattice {
        let spec = GroupSpec::parse(name).unwrap();
        let rd = build_root_datum(&spec).unwrap();
        let tw = match spec.twist {
            Some(k) => GaloisTwist::named(&rd, k).unwrap(),
            None => GaloisTwist::trivial(&rd),
        };
        CoinvariantLattice::new(rd, tw).unwrap()
    }

    #[test]
    fn unitary_three() {
        let lat = lattice("2A2");
        assert_eq!(lat.describe(), "Z + Z/2");
        assert_eq!(lat.orbits, vec![vec![0, 1]]);
        let e1 = lat.project(&[1, 0, 0]);
        let e3 = lat.project(&[0, 0, 1]);
        assert_eq!(e1.free, vec![1]);
        assert_eq!(lat.add(&e1, &e3), lat.zero());
        let alpha = lat.simple_class(0);
        assert_ne!(alpha, lat.zero());
        assert!(lat.leq(&lat.project(&[0, 1, 0]), &e1));
        assert!(!lat.leq(&e1, &lat.project(&[0, 1, 0])));
        assert_eq!(lat.invariant_basis().len(), 1);
        assert_eq!(lat.coroot_orbits.len(), 2);
    }

    #[test]
    fn split_gl() {
        let lat = lattice("GL2");
        assert_eq!(lat.describe(), "Z^2");
        assert_eq!(lat.describe_pi1(), "Z");
        let c = lat.project(&[1, 0]);
        assert_eq!(lat.kappa(&c).free, vec![1]);
        assert!(lat.leq(&lat.project(&[0, 1]), &c));
    }

    #[test]
    fn pi1_adjoint() {
        assert_eq!(lattice("A2").describe_pi1(), "Z/3");
        assert_eq!(lattice("E8").describe_pi1(), "0");
        assert_eq!(lattice("D4").describe_pi1(), "Z/2 + Z/2");
        assert_eq!(lattice("2D4").describe_pi1(), "Z/2");
        assert_eq!(lattice("3D4").describe_pi1(), "0");
    }

    #[test]
    fn relative_weyl_orders() {
        assert_eq!(lattice("2A2").relative_weyl_elements(100).unwrap().len(), 2);
        assert_eq!(lattice("2A3").relative_weyl_elements(100).unwrap().len(), 8);
        assert_eq!(lattice("2D4").relative_weyl_elements(1000).unwrap().len(), 48);
        assert_eq!(lattice("3D4").relative_weyl_elements(1000).unwrap().len(), 12);
        for w in lattice("3D4").relative_weyl_elements(1000).unwrap() {
            let lat = lattice("3D4");
            assert_eq!(lat.rd.length(&w), w.len());
        }
    }

    #[test]
    fn rejects_bad_twist() {
        let rd = build_root_datum(&GroupSpec::parse("B3").unwrap()).unwrap();
        assert!(GaloisTwist::parse(&rd, "[[0,1,0],[1,0,0],[0,0,1]]").is_err());
        assert!(GaloisTwist::named(&rd, TwistKind::DiagramD).is_err());
        let a2 = build_root_datum(&GroupSpec::parse("A2").unwrap()).unwrap();
        assert_eq!(GaloisTwist::parse(&a2, "[[0,1],[1,0]]").unwrap().order, 2);
    }

    proptest! {
        #[test]
        fn projection_kills_twist_image(v in proptest::collection::vec(-6i64..7, 4)) {
            for name in ["2A3", "GL4"] {
                let lat = lattice(name);
                let sv = mat_vec(&lat.twist.sigma, &v);
                prop_assert_eq!(lat.project(&sv), lat.project(&v));
                let c = lat.project(&v);
                prop_assert_eq!(lat.project(&lat.lift(&c)), c);
            }
        }

        #[test]
        fn leq_is_reflexive_and_antisymmetric(a in proptest::collection::vec(-3i64..4, 4), b in proptest::collection::vec(-3i64..4, 4)) {
            let lat = lattice("2A3");
            let (ca, cb) = (lat.project(&a), lat.project(&b));
            prop_assert!(lat.leq(&ca, &ca));
            if lat.leq(&ca, &cb) && lat.leq(&cb, &ca) {
                prop_assert_eq!(ca, cb);
            }
        }

        #[test]
        fn dominant_rep_is_dominant(v in proptest::collection::vec(-5i64..6, 4)) {
            let lat = lattice("3D4");
            let c = lat.project(&v);
            let (d, w) = lat.dominant_representative(&c);
            prop_assert!(lat.is_dominant(&d));
            prop_assert_eq!(lat.apply(&w, &c), d);
        }
    }
}
