//! Based root data for reductive groups of types A-G and GL_n, presented on the
//! cocharacter lattice, together with Weyl group words acting on it.

use crate::error::{check_len, Error, Result};
use crate::galois::TwistKind;
use crate::linalg::{dot, inverse_q, q, Mat, Scalar, Q};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    fn from_char(c: char) -> Option<CartanType> {
        Some(match c {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'E' => CartanType::E,
            'F' => CartanType::F,
            'G' => CartanType::G,
            _ => return None,
        })
    }

    fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }

    fn admits_rank(self, n: usize) -> bool {
        match self {
            CartanType::A => n >= 1,
            CartanType::B | CartanType::C => n >= 2,
            CartanType::D => n >= 4,
            CartanType::E => (6..=8).contains(&n),
            CartanType::F => n == 4,
            CartanType::G => n == 2,
        }
    }
}

/// Which lattice the cocharacters live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lattice {
    /// Basis of fundamental coweights (the adjoint group).
    Adjoint,
    /// Basis of simple coroots (the simply connected group).
    SimplyConnected,
    /// Standard coordinates of GL_n.
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeTag {
    Simple { kind: CartanType, rank: usize },
    GL(usize),
}

impl TypeTag {
    pub fn semisimple_rank(&self) -> usize {
        match *self {
            TypeTag::Simple { rank, .. } => rank,
            TypeTag::GL(n) => n - 1,
        }
    }

    /// The Cartan type of the derived root system (GL_n gives A_{n-1}).
    pub fn cartan_type(&self) -> Option<(CartanType, usize)> {
        match *self {
            TypeTag::Simple { kind, rank } => Some((kind, rank)),
            TypeTag::GL(n) if n >= 2 => Some((CartanType::A, n - 1)),
            TypeTag::GL(_) => None,
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::Simple { kind, rank } => write!(f, "{}{}", kind.letter(), rank),
            TypeTag::GL(n) => write!(f, "GL{n}"),
        }
    }
}

/// A parsed group name such as `B3`, `E6.sc`, `GL4`, `SL2`, `2A2` or `G2+T1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub tag: TypeTag,
    pub lattice: Lattice,
    pub central_rank: usize,
    pub twist: Option<TwistKind>,
    pub name: String,
}

impl GroupSpec {
    pub fn parse(s: &str) -> Result<GroupSpec> {
        let bad = || Error::UnsupportedType(s.to_string());
        let name = s.trim();
        let (body, central_rank) = match name.split_once("+T") {
            Some((b, k)) => (b, k.parse::<usize>().map_err(|_| bad())?),
            None => (name, 0),
        };
        let (body, sc) = match body.strip_suffix(".sc") {
            Some(b) => (b, true),
            None => (body, false),
        };
        let number = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let simple = |kind: CartanType, rank: usize, lattice| -> Result<GroupSpec> {
            if !kind.admits_rank(rank) {
                return Err(bad());
            }
            Ok(GroupSpec {
                tag: TypeTag::Simple { kind, rank },
                lattice,
                central_rank,
                twist: None,
                name: name.to_string(),
            })
        };
        let lattice = if sc { Lattice::SimplyConnected } else { Lattice::Adjoint };
        if let Some(n) = body.strip_prefix("GL") {
            let n = number(n)?;
            if n == 0 || sc {
                return Err(bad());
            }
            return Ok(GroupSpec {
                tag: TypeTag::GL(n),
                lattice: Lattice::General,
                central_rank,
                twist: None,
                name: name.to_string(),
            });
        }
        if let Some(n) = body.strip_prefix("PGL") {
            let n = number(n)?;
            if n < 2 || sc {
                return Err(bad());
            }
            return simple(CartanType::A, n - 1, Lattice::Adjoint);
        }
        if let Some(n) = body.strip_prefix("SL") {
            let n = number(n)?;
            if n < 2 || sc {
                return Err(bad());
            }
            return simple(CartanType::A, n - 1, Lattice::SimplyConnected);
        }
        if let Some(rest) = body.strip_prefix("2A") {
            let n = number(rest)?;
            if n < 2 || sc {
                return Err(bad());
            }
            return Ok(GroupSpec {
                tag: TypeTag::GL(n + 1),
                lattice: Lattice::General,
                central_rank,
                twist: Some(TwistKind::Unitary),
                name: name.to_string(),
            });
        }
        if let Some(rest) = body.strip_prefix("2D") {
            let mut g = simple(CartanType::D, number(rest)?, lattice)?;
            g.twist = Some(TwistKind::DiagramD);
            return Ok(g);
        }
        if body == "3D4" {
            let mut g = simple(CartanType::D, 4, lattice)?;
            g.twist = Some(TwistKind::Triality);
            return Ok(g);
        }
        let mut chars = body.chars();
        let kind = chars.next().and_then(CartanType::from_char).ok_or_else(bad)?;
        simple(kind, number(chars.as_str())?, lattice)
    }
}

/// Cartan matrix with `a[i][j] = <alpha_i, alpha_j^vee>`, Bourbaki numbering.
pub fn cartan_matrix(kind: CartanType, n: usize) -> Mat {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match kind {
        CartanType::A | CartanType::B | CartanType::C => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        CartanType::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        CartanType::E => {
            link(0, 2);
            link(2, 3);
            link(3, 4);
            link(1, 3);
            for i in 4..n - 1 {
                link(i, i + 1);
            }
        }
        CartanType::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        CartanType::G => link(0, 1),
    }
    match kind {
        CartanType::B => a[n - 2][n - 1] = -2,
        CartanType::C => a[n - 1][n - 2] = -2,
        CartanType::F => a[1][2] = -2,
        CartanType::G => a[1][0] = -3,
        _ => {}
    }
    a
}

fn expected_positive_roots(tag: &TypeTag) -> usize {
    match tag.cartan_type() {
        None => 0,
        Some((kind, n)) => match kind {
            CartanType::A => n * (n + 1) / 2,
            CartanType::B | CartanType::C => n * n,
            CartanType::D => n * (n - 1),
            CartanType::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            CartanType::F => 24,
            CartanType::G => 6,
        },
    }
}

/// Order of the absolute Weyl group.
pub fn weyl_group_order(tag: &TypeTag) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    match tag.cartan_type() {
        None => 1,
        Some((kind, n)) => match kind {
            CartanType::A => fact(n + 1),
            CartanType::B | CartanType::C => (1u128 << n) * fact(n),
            CartanType::D => (1u128 << (n - 1)) * fact(n),
            CartanType::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            CartanType::F => 1152,
            CartanType::G => 12,
        },
    }
}

/// A positive root of G with its coroot, in both simple and lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coefficients in the simple roots.
    pub coeffs: Vec<i64>,
    /// Coefficients of the coroot in the simple coroots.
    pub coroot_coeffs: Vec<i64>,
    /// The root as a character (dual coordinates).
    pub root: Vec<i64>,
    /// The coroot as a cocharacter.
    pub coroot: Vec<i64>,
}

/// A Weyl group element as a word `s_{i1} ... s_{ik}` (0-based letters,
/// applied right to left).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord {
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn identity() -> WeylWord {
        WeylWord::default()
    }

    pub fn new(letters: Vec<usize>) -> WeylWord {
        WeylWord { letters }
    }

    /// Number of letters; equals the length when the word is reduced.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord { letters: self.letters.iter().rev().copied().collect() }
    }

    /// The product `self * other`.
    pub fn compose(&self, other: &WeylWord) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        WeylWord { letters }
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.letters.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{}", s.join(" "))
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub spec: GroupSpec,
    /// Rank of the cocharacter lattice.
    pub rank: usize,
    pub cartan: Mat,
    pub cartan_inv: Vec<Vec<Q>>,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    pub positive_roots: Vec<Root>,
    /// Sum of the positive roots.
    pub two_rho: Vec<i64>,
    /// Sum of the positive coroots.
    pub two_rho_check: Vec<i64>,
    /// Set when the derived group is not simply connected.
    pub warnings: Vec<String>,
}

pub fn build_root_datum(spec: &GroupSpec) -> Result<RootDatum> {
    let (cartan, mut simple_roots, mut simple_coroots, rank0) = match spec.tag {
        TypeTag::GL(n) => {
            let a = if n >= 2 { cartan_matrix(CartanType::A, n - 1) } else { Vec::new() };
            let roots: Vec<Vec<i64>> = (0..n.saturating_sub(1))
                .map(|i| {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v[i + 1] = -1;
                    v
                })
                .collect();
            (a, roots.clone(), roots, n)
        }
        TypeTag::Simple { kind, rank } => {
            let a = cartan_matrix(kind, rank);
            let unit = |i: usize| (0..rank).map(|k| i64::from(k == i)).collect::<Vec<_>>();
            let (roots, coroots) = match spec.lattice {
                Lattice::SimplyConnected => {
                    ((0..rank).map(|i| a[i].clone()).collect(), (0..rank).map(unit).collect())
                }
                _ => (
                    (0..rank).map(unit).collect(),
                    (0..rank).map(|j| (0..rank).map(|i| a[i][j]).collect()).collect(),
                ),
            };
            (a, roots, coroots, rank)
        }
    };
    let rank = rank0 + spec.central_rank;
    for v in simple_roots.iter_mut().chain(simple_coroots.iter_mut()) {
        v.resize(rank, 0);
    }
    from_simple_data(spec.clone(), rank, cartan, simple_roots, simple_coroots)
}

/// Build a root datum from explicit simple roots and coroots.
pub fn from_simple_data(
    spec: GroupSpec,
    rank: usize,
    cartan: Mat,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
) -> Result<RootDatum> {
    let s = cartan.len();
    if rank == 0 {
        return Err(Error::MalformedDatum("rank must be positive".into()));
    }
    for i in 0..s {
        for j in 0..s {
            if dot(&simple_roots[i], &simple_coroots[j]) != cartan[i][j] {
                return Err(Error::MalformedDatum(format!(
                    "pairing <alpha_{}, alpha_{}^vee> differs from the Cartan matrix",
                    i + 1,
                    j + 1
                )));
            }
            let (a, b) = (cartan[i][j], cartan[j][i]);
            let ok = if i == j { a == 2 } else { a <= 0 && (a == 0) == (b == 0) && a * b <= 3 };
            if !ok {
                return Err(Error::MalformedDatum("not a Cartan matrix".into()));
            }
        }
    }
    let cartan_inv = if s == 0 {
        Vec::new()
    } else {
        inverse_q(&cartan).ok_or_else(|| Error::MalformedDatum("singular Cartan matrix".into()))?
    };
    let positive_roots = positive_roots(&cartan, &simple_roots, &simple_coroots, rank);
    if positive_roots.len() != expected_positive_roots(&spec.tag) {
        return Err(Error::MalformedDatum(format!(
            "found {} positive roots for {}",
            positive_roots.len(),
            spec.tag
        )));
    }
    let mut two_rho = vec![0; rank];
    let mut two_rho_check = vec![0; rank];
    for r in &positive_roots {
        for k in 0..rank {
            two_rho[k] += r.root[k];
            two_rho_check[k] += r.coroot[k];
        }
    }
    for (i, c) in simple_coroots.iter().enumerate() {
        if dot(&two_rho, c) != 2 {
            return Err(Error::MalformedDatum(format!("<2rho, alpha_{}^vee> != 2", i + 1)));
        }
    }
    let mut warnings = Vec::new();
    if matches!(spec.lattice, Lattice::Adjoint) && s > 0 {
        let det_is_one = crate::linalg::smith(&cartan, s).diag.iter().all(|&d| d == 1);
        if !det_is_one {
            warnings.push(format!(
                "{} on the adjoint lattice has a derived group that is not simply connected",
                spec.tag
            ));
        }
    }
    Ok(RootDatum {
        spec,
        rank,
        cartan,
        cartan_inv,
        simple_roots,
        simple_coroots,
        positive_roots,
        two_rho,
        two_rho_check,
        warnings,
    })
}

fn positive_roots(cartan: &Mat, roots: &[Vec<i64>], coroots: &[Vec<i64>], rank: usize) -> Vec<Root> {
    let s = cartan.len();
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    for i in 0..s {
        let c: Vec<i64> = (0..s).map(|k| i64::from(k == i)).collect();
        seen.insert(c.clone(), c.clone());
        order.push(c.clone());
        queue.push_back(c);
    }
    while let Some(c) = queue.pop_front() {
        let cv = seen[&c].clone();
        for i in 0..s {
            let p: i64 = (0..s).map(|j| c[j] * cartan[j][i]).sum();
            let pv: i64 = (0..s).map(|j| cv[j] * cartan[i][j]).sum();
            let mut c2 = c.clone();
            c2[i] -= p;
            let mut cv2 = cv.clone();
            cv2[i] -= pv;
            if c2.iter().all(|&x| x >= 0) && !seen.contains_key(&c2) {
                seen.insert(c2.clone(), cv2);
                order.push(c2.clone());
                queue.push_back(c2);
            }
        }
    }
    order.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    order
        .into_iter()
        .map(|c| {
            let cv = seen[&c].clone();
            let combine = |coef: &[i64], basis: &[Vec<i64>]| {
                (0..rank)
                    .map(|k| coef.iter().zip(basis).map(|(x, b)| x * b[k]).sum())
                    .collect()
            };
            Root { root: combine(&c, roots), coroot: combine(&cv, coroots), coeffs: c, coroot_coeffs: cv }
        })
        .collect()
}

/// Reflect Dynkin labels `x_k = <alpha_k, v>` by `s_i`.
pub(crate) fn reflect_labels<T: Scalar>(cartan: &Mat, i: usize, x: &mut [T]) {
    let xi = x[i].clone();
    for (k, xk) in x.iter_mut().enumerate() {
        let a = cartan[k][i];
        if a != 0 {
            *xk = xk.clone() - xi.clone() * T::from(a);
        }
    }
}

impl RootDatum {
    pub fn tag(&self) -> TypeTag {
        self.spec.tag
    }

    pub fn semisimple_rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn check_vec(&self, v: &[impl Sized]) -> Result<()> {
        check_len(v, self.rank)
    }

    /// Dynkin labels `<alpha_i, v>` of a cocharacter.
    pub fn labels<T: Scalar>(&self, v: &[T]) -> Vec<T> {
        self.simple_roots.iter().map(|a| dot(a, v)).collect()
    }

    /// Pairings `<lambda, alpha_i^vee>` of a character.
    pub fn char_labels<T: Scalar>(&self, l: &[T]) -> Vec<T> {
        self.simple_coroots.iter().map(|a| dot(a, l)).collect()
    }

    pub fn reflect_cochar<T: Scalar>(&self, i: usize, v: &mut [T]) {
        let p = dot(&self.simple_roots[i], v);
        for (x, c) in v.iter_mut().zip(&self.simple_coroots[i]) {
            if *c != 0 {
                *x = x.clone() - p.clone() * T::from(*c);
            }
        }
    }

    pub fn reflect_char<T: Scalar>(&self, i: usize, l: &mut [T]) {
        let p = dot(&self.simple_coroots[i], l);
        for (x, a) in l.iter_mut().zip(&self.simple_roots[i]) {
            if *a != 0 {
                *x = x.clone() - p.clone() * T::from(*a);
            }
        }
    }

    pub fn apply_cochar<T: Scalar>(&self, w: &WeylWord, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for &i in w.letters.iter().rev() {
            self.reflect_cochar(i, &mut out);
        }
        out
    }

    pub fn apply_char<T: Scalar>(&self, w: &WeylWord, l: &[T]) -> Vec<T> {
        let mut out = l.to_vec();
        for &i in w.letters.iter().rev() {
            self.reflect_char(i, &mut out);
        }
        out
    }

    pub fn apply_labels<T: Scalar>(&self, w: &WeylWord, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        for &i in w.letters.iter().rev() {
            reflect_labels(&self.cartan, i, &mut out);
        }
        out
    }

    pub fn is_dominant<T: Scalar>(&self, v: &[T]) -> bool {
        self.labels(v).iter().all(|x| *x >= T::zero())
    }

    /// The dominant cocharacter in the orbit of `v` and a word `w` with `w(v)` dominant.
    pub fn dominant_representative<T: Scalar>(&self, v: &[T]) -> (Vec<T>, WeylWord) {
        let mut out = v.to_vec();
        let mut letters = Vec::new();
        while let Some(i) = (0..self.semisimple_rank())
            .find(|&i| dot(&self.simple_roots[i], &out) < T::zero())
        {
            self.reflect_cochar(i, &mut out);
            letters.insert(0, i);
        }
        (out, WeylWord { letters })
    }

    /// Same for characters.
    pub fn dominant_representative_char<T: Scalar>(&self, l: &[T]) -> (Vec<T>, WeylWord) {
        let mut out = l.to_vec();
        let mut letters = Vec::new();
        while let Some(i) = (0..self.semisimple_rank())
            .find(|&i| dot(&self.simple_coroots[i], &out) < T::zero())
        {
            self.reflect_char(i, &mut out);
            letters.insert(0, i);
        }
        (out, WeylWord { letters })
    }

    /// Longest element of the parabolic subgroup generated by `subset`.
    pub fn longest_in(&self, subset: &[usize]) -> WeylWord {
        let s = self.semisimple_rank();
        let mut x: Vec<i64> = (0..s).map(|i| if subset.contains(&i) { -1 } else { 0 }).collect();
        let mut letters = Vec::new();
        while let Some(&i) = subset.iter().find(|&&i| x[i] < 0) {
            reflect_labels(&self.cartan, i, &mut x);
            letters.insert(0, i);
        }
        WeylWord { letters }
    }

    pub fn longest_element(&self) -> WeylWord {
        let all: Vec<usize> = (0..self.semisimple_rank()).collect();
        self.longest_in(&all)
    }

    /// Indices of positive roots sent to negative roots by `w`.
    pub fn inversions(&self, w: &WeylWord) -> Vec<usize> {
        let ones = vec![1i64; self.semisimple_rank()];
        // <w alpha, rho^vee> = <alpha, w^{-1} rho^vee>.
        let y = self.apply_labels(&w.inverse(), &ones);
        self.positive_roots
            .iter()
            .enumerate()
            .filter(|(_, r)| dot(&r.coeffs, &y) < 0)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn length(&self, w: &WeylWord) -> usize {
        self.inversions(w).len()
    }

    /// Canonical key of a Weyl element: its image of the regular labels `(1, ..., 1)`.
    pub fn element_key(&self, w: &WeylWord) -> Vec<i64> {
        self.apply_labels(w, &vec![1i64; self.semisimple_rank()])
    }

    /// Minimal length representatives of `W / W_L`, shortest first.
    pub fn minimal_coset_reps(&self, levi: &[usize]) -> Vec<WeylWord> {
        let gens: Vec<(Vec<usize>, WeylWord)> =
            (0..self.semisimple_rank()).map(|i| (vec![i], WeylWord::new(vec![i]))).collect();
        let start: Vec<i64> =
            (0..self.semisimple_rank()).map(|i| i64::from(!levi.contains(&i))).collect();
        coset_bfs(&self.cartan, &gens, start, usize::MAX).expect("uncapped")
    }

    /// The Weyl orbit of a cocharacter, sorted.
    pub fn weyl_orbit(&self, v: &[i64], cap: usize) -> Result<Vec<Vec<i64>>> {
        self.orbit_with(v, cap, |i, x| self.reflect_cochar(i, x))
    }

    /// The Weyl orbit of a character, sorted.
    pub fn weyl_orbit_char(&self, l: &[i64], cap: usize) -> Result<Vec<Vec<i64>>> {
        self.orbit_with(l, cap, |i, x| self.reflect_char(i, x))
    }

    fn orbit_with(
        &self,
        v: &[i64],
        cap: usize,
        reflect: impl Fn(usize, &mut [i64]),
    ) -> Result<Vec<Vec<i64>>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        seen.insert(v.to_vec());
        let mut stack = vec![v.to_vec()];
        while let Some(x) = stack.pop() {
            for i in 0..self.semisimple_rank() {
                let mut y = x.clone();
                reflect(i, &mut y);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    stack.push(y);
                }
            }
        }
        let sorted: BTreeSet<Vec<i64>> = seen.into_iter().collect();
        Ok(sorted.into_iter().collect())
    }

    /// Coefficients `c` with `v = sum_j c_j alpha_j^vee`, if `v` lies in the
    /// rational span of the coroots.
    pub fn coroot_coefficients(&self, v: &[Q]) -> Option<Vec<Q>> {
        let labels = self.labels(v);
        let s = self.semisimple_rank();
        let c: Vec<Q> = (0..s)
            .map(|i| (0..s).map(|j| self.cartan_inv[i][j] * labels[j]).sum())
            .collect();
        let back: Vec<Q> = (0..self.rank)
            .map(|k| (0..s).map(|j| c[j] * q(self.simple_coroots[j][k])).sum())
            .collect();
        (back == v).then_some(c)
    }

    /// `<2 rho, v>` for a cocharacter.
    pub fn two_rho_pairing<T: Scalar>(&self, v: &[T]) -> T {
        dot(&self.two_rho, v)
    }

    /// A cocharacter with Dynkin labels `delta_{ij}`, if the lattice has one.
    /// For GL_n this is `e_1 + ... + e_{i+1}`.
    pub fn fundamental_coweight(&self, i: usize) -> Option<Vec<i64>> {
        let s = self.semisimple_rank();
        if i >= s {
            return None;
        }
        if let TypeTag::GL(n) = self.spec.tag {
            let mut v: Vec<i64> = (0..n).map(|k| i64::from(k <= i)).collect();
            v.resize(self.rank, 0);
            return Some(v);
        }
        let cols: Vec<Vec<i64>> = (0..self.rank).map(|k| self.simple_roots.iter().map(|a| a[k]).collect()).collect();
        let target: Vec<i64> = (0..s).map(|k| i64::from(k == i)).collect();
        crate::linalg::solve_integral(&cols, &target)
    }

    /// Index of the positive root with the given simple-root coefficients.
    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.coeffs == coeffs)
    }

    /// Image of a positive root under `w`, as `(sign, index)`.
    pub fn act_on_root(&self, w: &WeylWord, k: usize) -> (i64, usize) {
        let mut c = self.positive_roots[k].coeffs.clone();
        let s = self.semisimple_rank();
        for &i in w.letters.iter().rev() {
            let p: i64 = (0..s).map(|j| c[j] * self.cartan[j][i]).sum();
            c[i] -= p;
        }
        if c.iter().all(|&x| x >= 0) {
            (1, self.root_index(&c).expect("root"))
        } else {
            let neg: Vec<i64> = c.iter().map(|x| -x).collect();
            (-1, self.root_index(&neg).expect("root"))
        }
    }
}

/// Breadth-first enumeration of minimal representatives of `W / W_L` for a
/// (relative) Weyl group whose generators are the longest elements of the
/// given node orbits. `start` holds labels fixed exactly by `W_L`.
pub(crate) fn coset_bfs(
    cartan: &Mat,
    gens: &[(Vec<usize>, WeylWord)],
    start: Vec<i64>,
    cap: usize,
) -> Result<Vec<WeylWord>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(start.clone());
    let mut out = vec![WeylWord::identity()];
    let mut queue = VecDeque::from([(start, WeylWord::identity())]);
    while let Some((x, w)) = queue.pop_front() {
        for (orbit, g) in gens {
            if x[orbit[0]] <= 0 {
                continue;
            }
            let mut y = x.clone();
            for &i in g.letters.iter().rev() {
                reflect_labels(cartan, i, &mut y);
            }
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                let w2 = g.compose(&w);
                out.push(w2.clone());
                queue.push_back((y, w2));
            }
        }
    }
    Ok(out)
}
