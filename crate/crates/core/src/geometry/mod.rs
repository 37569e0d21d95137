//! Base points, the vectors `delta_t`, cones inside `Delta_c^+`, simplex
//! volumes, an independent permutahedron volume oracle, the stability search
//! and the regularity certificate.

pub mod lp;

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::absolute::HeapOrder;
use crate::cambrian::{sorting_word, w_c_plus};
use crate::coxeter::{CoxeterElement, CoxeterSystem, Element, Reflection};
use crate::numfield::{self, Scalar, Vector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("(1 - c^-1) delta_t differs from the coroot of {0}")]
    DeltaIdentity(String),
    #[error("cone generators do not span the space")]
    DegenerateCone,
    #[error("the stability search needs a simply-laced group, got {0}")]
    NotSimplyLaced(String),
    #[error("lifted vertices of cell {0} do not determine a hyperplane")]
    DegenerateLift(usize),
}

/// How to choose the point `y` in the base chamber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasePointMode {
    Canonical,
    Seeded(u64),
}

/// A point of the base chamber in fundamental-coweight coordinates, so that
/// coordinate `s` is the pairing with the simple root `s`.
pub fn base_point(w: &CoxeterSystem, mode: BasePointMode) -> Vector {
    match mode {
        BasePointMode::Canonical => w.rho(),
        BasePointMode::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..w.rank())
                .map(|_| {
                    let d: i64 = rng.gen_range(1..=64);
                    let n: i64 = rng.gen_range(1..=2 * d);
                    Scalar::from_ratio(n, d)
                })
                .collect()
        }
    }
}

/// Whether every positive root pairs positively with `y`.
pub fn in_base_chamber(w: &CoxeterSystem, y: &[Scalar]) -> bool {
    w.reflections()
        .all(|t| numfield::dot(w.root(t), y).is_positive())
}

/// The vertex `x y` of the permutahedron.
pub fn vertex(w: &CoxeterSystem, x: Element, y: &[Scalar]) -> Vector {
    w.act_v(x, y)
}

/// The inversion sequence of the `c^-1`-sorting word of `w_0`.
pub fn cluster_sequence(w: &CoxeterSystem, c: &CoxeterElement) -> Vec<Reflection> {
    let cinv: Vec<usize> = c.word.iter().rev().copied().collect();
    let letters = sorting_word(w, w.longest_element(), &cinv).letters;
    w.inversion_sequence(&letters).expect("sorting words are reduced")
}

fn unit(r: usize, s: usize) -> Vector {
    let mut e = vec![Scalar::zero(); r];
    e[s] = Scalar::one();
    e
}

/// `delta_t` for every reflection, indexed by reflection index, with the
/// identity `(1 - c^-1) delta_t = coroot(t)` checked exactly.
pub fn delta_vertices(w: &CoxeterSystem, c: &CoxeterElement) -> Result<Vec<Vector>, GeometryError> {
    let cinv: Vec<usize> = c.word.iter().rev().copied().collect();
    let letters = sorting_word(w, w.longest_element(), &cinv).letters;
    let seq = w.inversion_sequence(&letters).expect("sorting words are reduced");
    let cinv_el = w.inverse(c.element);
    let mut out = vec![Vec::new(); w.num_reflections()];
    let mut prefix = w.identity();
    for (&s, &t) in letters.iter().zip(&seq) {
        let d = w.act_v(prefix, &unit(w.rank(), s));
        let image = numfield::vsub(&d, &w.act_v(cinv_el, &d));
        if &image != w.coroot_v(t) {
            return Err(GeometryError::DeltaIdentity(
                crate::absolute::reflection_name(w, t),
            ));
        }
        out[t.index()] = d;
        prefix = w.mul_simple(prefix, s);
    }
    Ok(out)
}

/// A cone spanned by finitely many generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub reflections: Vec<Reflection>,
    pub generators: Vec<Vector>,
}

impl Cone {
    /// The cone on `delta_t` for the given reflections.
    pub fn of_reflections(deltas: &[Vector], reflections: &[Reflection]) -> Cone {
        Cone {
            reflections: reflections.to_vec(),
            generators: reflections.iter().map(|t| deltas[t.index()].clone()).collect(),
        }
    }

    /// `Delta(u)`: the closed chamber `u^-1 B`, spanned by `u^-1 lambda_s`.
    pub fn chamber(w: &CoxeterSystem, u: Element) -> Cone {
        let uinv = w.inverse(u);
        Cone {
            reflections: Vec::new(),
            generators: (0..w.rank()).map(|s| w.act_v(uinv, &unit(w.rank(), s))).collect(),
        }
    }

    /// Coefficients of `x` in the generators; requires a basis.
    pub fn coordinates(&self, x: &[Scalar]) -> Result<Vector, GeometryError> {
        let r = x.len();
        if self.generators.len() != r || numfield::rank(&self.generators) != r {
            return Err(GeometryError::DegenerateCone);
        }
        numfield::solve_columns(&self.generators, x).ok_or(GeometryError::DegenerateCone)
    }

    pub fn contains_point(&self, x: &[Scalar]) -> Result<bool, GeometryError> {
        Ok(self.coordinates(x)?.iter().all(|a| !a.is_negative()))
    }
}

/// Whether every generator of `inner` lies in the simplicial cone `outer`.
pub fn cone_contains(inner: &Cone, outer: &Cone) -> Result<bool, GeometryError> {
    for g in &inner.generators {
        if !outer.contains_point(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of comparing the descriptions of `Delta_c^+`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RegionReport {
    /// Every `delta_t` lies in the cone on the `delta_s`.
    pub deltas_in_simple_cone: bool,
    /// The cone on the `delta_s` equals the intersection of the half-spaces
    /// `<beta_t, x> >= 0` over left inversions `t` of `c`.
    pub halfspaces_match: bool,
    /// The chambers inside the cone are exactly `u^-1 B` for `u` in `W_c^+`.
    pub chambers_match: bool,
    /// The cone is the image of the positive coroot cone under `(1-c^-1)^-1`.
    pub coroot_cone_matches: bool,
}

impl RegionReport {
    pub fn passed(&self) -> bool {
        self.deltas_in_simple_cone
            && self.halfspaces_match
            && self.chambers_match
            && self.coroot_cone_matches
    }
}

pub fn check_region(
    w: &CoxeterSystem,
    c: &CoxeterElement,
    deltas: &[Vector],
) -> Result<RegionReport, GeometryError> {
    let r = w.rank();
    let simple: Vec<Reflection> = (0..r).map(|i| Reflection(i as u16)).collect();
    let cone = Cone::of_reflections(deltas, &simple);
    let mut deltas_in_simple_cone = true;
    for t in w.reflections() {
        deltas_in_simple_cone &= cone.contains_point(&deltas[t.index()])?;
    }

    let tl: Vec<Reflection> = w.t_left(c.element).iter().collect();
    let pos = |x: &[Scalar]| tl.iter().all(|&t| !numfield::dot(w.root(t), x).is_negative());
    let mut halfspaces_match = tl.len() == r && cone.generators.iter().all(|g| pos(g));
    if halfspaces_match {
        let rows: Vec<Vector> = tl.iter().map(|&t| w.root(t).clone()).collect();
        let inv = numfield::inverse(&rows).ok_or(GeometryError::DegenerateCone)?;
        for k in 0..r {
            let ray: Vector = inv.iter().map(|row| row[k].clone()).collect();
            halfspaces_match &= cone.contains_point(&ray)?;
        }
    }

    let plus: BTreeSet<Element> = w_c_plus(w, c).into_iter().collect();
    let y = w.rho();
    let mut chambers_match = true;
    for x in w.elements() {
        let p = w.act_v(w.inverse(x), &y);
        let inside = cone.contains_point(&p)?;
        chambers_match &= inside == plus.contains(&x);
        chambers_match &= inside == pos(&p);
        if plus.contains(&x) {
            chambers_match &= cone_contains(&Cone::chamber(w, x), &cone)?;
        }
    }

    let simple_coroots = Cone {
        reflections: simple.clone(),
        generators: simple.iter().map(|&s| w.coroot_v(s).clone()).collect(),
    };
    let mut coroot_cone_matches = true;
    for t in w.reflections() {
        coroot_cone_matches &= simple_coroots.contains_point(w.coroot_v(t))?;
    }
    Ok(RegionReport {
        deltas_in_simple_cone,
        halfspaces_match,
        chambers_match,
        coroot_cone_matches,
    })
}

/// Signed determinant of the edge vectors `v_i - v_0`.
pub fn orientation(vertices: &[Vector]) -> Scalar {
    let Some(v0) = vertices.first() else {
        return Scalar::zero();
    };
    if vertices.len() != v0.len() + 1 {
        return Scalar::zero();
    }
    let rows: Vec<Vector> = vertices[1..].iter().map(|v| numfield::vsub(v, v0)).collect();
    numfield::determinant(&rows)
}

/// Unnormalized volume `|det(v_1 - v_0, ..., v_r - v_0)|`; zero unless the
/// list has exactly `r + 1` affinely independent points.
pub fn simplex_volume(vertices: &[Vector]) -> Scalar {
    orientation(vertices).abs()
}

/// Vertex order used to pick the pulled vertex of every face.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PullOrder {
    IdAscending,
    IdDescending,
    LengthDescending,
}

impl PullOrder {
    pub const ALL: [PullOrder; 3] = [
        PullOrder::IdAscending,
        PullOrder::IdDescending,
        PullOrder::LengthDescending,
    ];

    fn key(self, w: &CoxeterSystem, x: Element) -> (i64, i64) {
        match self {
            PullOrder::IdAscending => (0, x.0 as i64),
            PullOrder::IdDescending => (0, -(x.0 as i64)),
            PullOrder::LengthDescending => (-(w.length(x) as i64), x.0 as i64),
        }
    }
}

type Simplices = Rc<Vec<Vec<Element>>>;

struct Puller<'a> {
    w: &'a CoxeterSystem,
    order: PullOrder,
    memo: HashMap<(Element, u32), Simplices>,
}

impl Puller<'_> {
    /// Pulling triangulation of the face `conv(rep W_J y)`.
    fn triangulate(&mut self, rep: Element, j: u32) -> Simplices {
        if let Some(s) = self.memo.get(&(rep, j)) {
            return s.clone();
        }
        let w = self.w;
        let out = if j == 0 {
            vec![vec![rep]]
        } else {
            let coset = w.coset(rep, j);
            let order = self.order;
            let apex = *coset.iter().min_by_key(|&&x| order.key(w, x)).unwrap();
            let mut out = Vec::new();
            for i in 0..w.rank() {
                if j >> i & 1 == 0 {
                    continue;
                }
                let k = j & !(1 << i);
                let apex_face = w.min_coset_rep(apex, k);
                let faces: BTreeSet<Element> =
                    coset.iter().map(|&x| w.min_coset_rep(x, k)).collect();
                for f in faces {
                    if f == apex_face {
                        continue;
                    }
                    for s in self.triangulate(f, k).iter() {
                        let mut simplex = Vec::with_capacity(s.len() + 1);
                        simplex.push(apex);
                        simplex.extend_from_slice(s);
                        out.push(simplex);
                    }
                }
            }
            out
        };
        let out = Rc::new(out);
        self.memo.insert((rep, j), out.clone());
        out
    }
}

/// The simplices of a pulling triangulation of `Perm_y`, as vertex elements.
pub fn pulling_triangulation(w: &CoxeterSystem, order: PullOrder) -> Vec<Vec<Element>> {
    let mut p = Puller {
        w,
        order,
        memo: HashMap::new(),
    };
    let full = (1u32 << w.rank()) - 1;
    p.triangulate(w.identity(), full).as_ref().clone()
}

/// Total unnormalized volume of `Perm_y`, computed from the coset face
/// lattice alone.
pub fn permutahedron_volume(w: &CoxeterSystem, y: &[Scalar], order: PullOrder) -> Scalar {
    let coords: Vec<Vector> = w.elements().map(|x| vertex(w, x, y)).collect();
    let simplices = pulling_triangulation(w, order);
    simplices
        .par_iter()
        .map(|s| {
            let v: Vec<Vector> = s.iter().map(|x| coords[x.index()].clone()).collect();
            simplex_volume(&v)
        })
        .reduce(Scalar::zero, |a, b| a + b)
}

/// `<gamma, coroot(t)> / <beta_t, y>`.
pub fn slope(w: &CoxeterSystem, gamma: &[Scalar], y: &[Scalar], t: Reflection) -> Scalar {
    let num = w.pair(gamma, w.coroot_v(t));
    let den = numfield::dot(w.root(t), y);
    num.checked_div(&den).expect("y lies in the base chamber")
}

/// A point `y` and functional `gamma` whose slope increases strictly along
/// the heap order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityCertificate {
    pub y: Vector,
    pub gamma: Vector,
    /// 0 for the canonical point, `k` for the `k`-th seeded candidate.
    pub attempt: usize,
}

/// The first comparable pair `t < t'` whose slopes fail to increase strictly.
pub fn stability_violation(
    w: &CoxeterSystem,
    heap: &HeapOrder,
    y: &[Scalar],
    gamma: &[Scalar],
) -> Option<(Reflection, Reflection)> {
    heap.strict_pairs().into_iter().find(|&(t, u)| {
        let lhs = w.pair(gamma, w.coroot_v(t)) * numfield::dot(w.root(u), y);
        let rhs = w.pair(gamma, w.coroot_v(u)) * numfield::dot(w.root(t), y);
        lhs >= rhs
    })
}

fn to_rational(x: &Scalar) -> BigRational {
    x.as_rational().cloned().expect("simply-laced data is rational")
}

/// Solves for `gamma` with `mu(t) < mu(t')` on every heap cover, trying the
/// canonical point first and then seeded rational points.
pub fn find_stability(
    w: &CoxeterSystem,
    heap: &HeapOrder,
    attempts: usize,
    seed: u64,
) -> Result<Option<StabilityCertificate>, GeometryError> {
    if !w.is_simply_laced() {
        return Err(GeometryError::NotSimplyLaced(w.label().to_string()));
    }
    let covers = heap.covers();
    for attempt in 0..attempts {
        let mode = if attempt == 0 {
            BasePointMode::Canonical
        } else {
            BasePointMode::Seeded(seed.wrapping_add(attempt as u64))
        };
        let y = base_point(w, mode);
        let a: Vec<Vec<BigRational>> = covers
            .iter()
            .map(|&(t, u)| {
                let bt = to_rational(&numfield::dot(w.root(t), &y));
                let bu = to_rational(&numfield::dot(w.root(u), &y));
                w.coroot_v(t)
                    .iter()
                    .zip(w.coroot_v(u))
                    .map(|(p, q)| &bu * to_rational(p) - &bt * to_rational(q))
                    .collect()
            })
            .collect();
        let b = vec![-BigRational::one(); a.len()];
        let Some(g) = lp::feasible_point(&a, &b) else {
            continue;
        };
        let gamma: Vector = if g.is_empty() {
            vec![Scalar::zero(); w.rank()]
        } else {
            g.into_iter().map(Scalar::from_rational).collect()
        };
        if stability_violation(w, heap, &y, &gamma).is_none() {
            return Ok(Some(StabilityCertificate { y, gamma, attempt }));
        }
    }
    Ok(None)
}

/// `<gamma, x^-1 y> - eps 2^{l(x)}`.
pub fn height(w: &CoxeterSystem, gamma: &[Scalar], y: &[Scalar], x: Element, eps: &BigRational) -> Scalar {
    let lin = w.pair(gamma, &w.act_v(w.inverse(x), y));
    let pow = BigRational::from_integer(BigInt::one() << w.length(x));
    lin - Scalar::from_rational(eps * pow)
}

/// The affine function `x -> normal . x + offset` through a lifted cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedHyperplane {
    pub normal: Vector,
    pub offset: Scalar,
}

impl LiftedHyperplane {
    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        numfield::dot(&self.normal, x) + &self.offset
    }
}

/// A lifted permutahedron vertex on or below a cell's hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftViolation {
    pub cell: usize,
    pub vertex: Element,
    pub epsilon: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCertificate {
    pub epsilon: BigRational,
    pub halvings: usize,
    pub hyperplanes: Vec<LiftedHyperplane>,
}

/// Checks that every cell lifts to a lower face at the given `eps`.
pub fn check_lower_faces(
    w: &CoxeterSystem,
    cells: &[Vec<Element>],
    y: &[Scalar],
    gamma: &[Scalar],
    eps: &BigRational,
) -> Result<Result<Vec<LiftedHyperplane>, LiftViolation>, GeometryError> {
    let r = w.rank();
    let coords: Vec<Vector> = w.elements().map(|x| vertex(w, x, y)).collect();
    let heights: Vec<Scalar> = w.elements().map(|x| height(w, gamma, y, x, eps)).collect();
    let results: Vec<Result<Result<LiftedHyperplane, Element>, GeometryError>> = cells
        .par_iter()
        .enumerate()
        .map(|(k, cell)| {
            let cols: Vec<Vector> = (0..=r)
                .map(|j| {
                    if j < r {
                        cell.iter().map(|x| coords[x.index()][j].clone()).collect()
                    } else {
                        vec![Scalar::one(); cell.len()]
                    }
                })
                .collect();
            let target: Vector = cell.iter().map(|x| heights[x.index()].clone()).collect();
            let sol = numfield::solve_columns(&cols, &target)
                .ok_or(GeometryError::DegenerateLift(k))?;
            let plane = LiftedHyperplane {
                normal: sol[..r].to_vec(),
                offset: sol[r].clone(),
            };
            let bad = w.elements().find(|x| {
                !cell.contains(x) && heights[x.index()] <= plane.eval(&coords[x.index()])
            });
            Ok(match bad {
                Some(x) => Err(x),
                None => Ok(plane),
            })
        })
        .collect();
    let mut planes = Vec::with_capacity(cells.len());
    for (k, res) in results.into_iter().enumerate() {
        match res? {
            Ok(p) => planes.push(p),
            Err(vertex) => {
                return Ok(Err(LiftViolation {
                    cell: k,
                    vertex,
                    epsilon: eps.clone(),
                }))
            }
        }
    }
    Ok(Ok(planes))
}

/// Starting `eps` of the halving schedule.
pub fn initial_epsilon() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1024))
}

pub const MAX_HALVINGS: usize = 60;

/// Runs the halving schedule from `2^-10`; on failure returns the violation
/// seen at the smallest `eps` tried.
pub fn certify_regular(
    w: &CoxeterSystem,
    cells: &[Vec<Element>],
    y: &[Scalar],
    gamma: &[Scalar],
) -> Result<Result<RegularityCertificate, LiftViolation>, GeometryError> {
    let mut eps = initial_epsilon();
    let two = BigRational::from_integer(2.into());
    let mut last = None;
    for halvings in 0..=MAX_HALVINGS {
        match check_lower_faces(w, cells, y, gamma, &eps)? {
            Ok(hyperplanes) => {
                return Ok(Ok(RegularityCertificate {
                    epsilon: eps,
                    halvings,
                    hyperplanes,
                }))
            }
            Err(v) => last = Some(v),
        }
        eps = &eps / &two;
    }
    Ok(Err(last.expect("at least one attempt")))
}

/// Scalar `n / d` as a rational.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// The functional `w varpi_s` in simple-root coordinates, where `varpi_s`
/// pairs to 1 with the coroot of `s` and to 0 with the other simple coroots.
pub fn facet_functional(w: &CoxeterSystem, x: Element, s: usize) -> Vector {
    let r = w.rank();
    let rows: Vec<Vector> = (0..r)
        .map(|i| w.coroot_v(Reflection(i as u16)).clone())
        .collect();
    let inv = numfield::inverse(&rows).expect("simple coroots form a basis");
    let varpi: Vector = (0..r).map(|i| inv[i][s].clone()).collect();
    w.act_vstar(x, &varpi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absolute::HeapOrder;
    use crate::coxeter::perm::from_cycles;

    fn group(label: &str) -> CoxeterSystem {
        CoxeterSystem::from_label(label).unwrap()
    }

    /// Vectors in `R^4` become simple-root pairings.
    fn from_r4(v: [i64; 4]) -> Vector {
        (0..3).map(|i| Scalar::from_int(v[i] - v[i + 1])).collect()
    }

    #[test]
    fn canonical_and_seeded_points_are_interior() {
        for label in ["A2", "B3", "H3", "I2(7)"] {
            let w = group(label);
            assert!(base_point(&w, BasePointMode::Canonical)
                .iter()
                .all(|x| *x == Scalar::one()));
            for seed in 0..5 {
                let y = base_point(&w, BasePointMode::Seeded(seed));
                assert!(in_base_chamber(&w, &y));
                assert!(y.iter().all(|x| x.is_positive() && *x <= Scalar::from_int(2)));
            }
        }
        let w = group("A3");
        assert_ne!(
            base_point(&w, BasePointMode::Seeded(1)),
            base_point(&w, BasePointMode::Seeded(2))
        );
    }

    #[test]
    fn delta_table_in_s4() {
        let w = group("A3");
        let c = w.coxeter_element(&[0, 1, 2]).unwrap();
        let d = delta_vertices(&w, &c).unwrap();
        let expect = [
            ("(3 4)", [1, 1, 1, 0]),
            ("(2 4)", [1, 1, 0, 0]),
            ("(1 4)", [1, 0, 0, 0]),
            ("(2 3)", [1, 1, 0, 1]),
            ("(1 3)", [1, 0, 0, 1]),
            ("(1 2)", [1, 0, 1, 1]),
        ];
        let seq = cluster_sequence(&w, &c);
        for (k, (cyc, v)) in expect.iter().enumerate() {
            let t = w.reflection_of(from_cycles(&w, cyc).unwrap()).unwrap();
            assert_eq!(seq[k], t);
            assert_eq!(d[t.index()], from_r4(*v), "{cyc}");
        }
        let t12 = w.reflection_of(from_cycles(&w, "(1 2)").unwrap()).unwrap();
        let cinv = w.inverse(c.element);
        let img = numfield::vsub(&d[t12.index()], &w.act_v(cinv, &d[t12.index()]));
        assert_eq!(img, from_r4([1, -1, 0, 0]));
    }

    #[test]
    fn delta_identity_and_region_for_many_groups() {
        for label in ["A2", "A3", "B3", "H3", "G2", "I2(5)", "D4"] {
            let w = group(label);
            for c in w.standard_coxeter_elements() {
                let d = delta_vertices(&w, &c).unwrap();
                let rep = check_region(&w, &c, &d).unwrap();
                assert!(rep.passed(), "{label} {}: {rep:?}", c.word_string());
            }
        }
    }

    #[test]
    fn chamber_inside_chain_cone_example() {
        let w = group("A3");
        let c = w.coxeter_element(&[0, 1, 2]).unwrap();
        let d = delta_vertices(&w, &c).unwrap();
        let u = w.element_of_word(&[2, 1]).unwrap();
        let ts: Vec<Reflection> = ["(1 3)", "(1 2)", "(3 4)"]
            .iter()
            .map(|x| w.reflection_of(from_cycles(&w, x).unwrap()).unwrap())
            .collect();
        let outer = Cone::of_reflections(&d, &ts);
        assert!(cone_contains(&Cone::chamber(&w, u), &outer).unwrap());
        assert!(cone_contains(&outer, &outer).unwrap());
        let degenerate = Cone {
            reflections: vec![],
            generators: vec![d[0].clone(), d[0].clone(), d[1].clone()],
        };
        assert_eq!(
            cone_contains(&outer, &degenerate),
            Err(GeometryError::DegenerateCone)
        );
    }

    #[test]
    fn volumes_basic() {
        let w = group("A1");
        let y = vec![Scalar::from_int(3)];
        // Segment from 3 to -3 in the single coordinate.
        assert_eq!(
            permutahedron_volume(&w, &y, PullOrder::IdAscending),
            Scalar::from_int(6)
        );
        let flat = vec![vec![Scalar::zero(); 2], vec![Scalar::one(); 2], vec![Scalar::from_int(2); 2]];
        assert!(simplex_volume(&flat).is_zero());
    }

    #[test]
    fn volume_independent_of_pull_order_and_invariant() {
        for label in ["A2", "B2", "A3", "H3"] {
            let w = group(label);
            let y = base_point(&w, BasePointMode::Seeded(7));
            let vols: Vec<Scalar> = PullOrder::ALL
                .iter()
                .map(|&o| permutahedron_volume(&w, &y, o))
                .collect();
            assert!(vols[0].is_positive());
            assert!(vols.iter().all(|v| *v == vols[0]), "{label}");
        }
        let w = group("A3");
        let y = w.rho();
        let pts: Vec<Vector> = [0u32, 5, 9, 17].iter().map(|&i| vertex(&w, Element(i), &y)).collect();
        let moved: Vec<Vector> = pts.iter().map(|p| w.act_v(Element(11), p)).collect();
        assert_eq!(simplex_volume(&pts), simplex_volume(&moved));
    }

    #[test]
    fn pulling_simplex_count_for_hexagon() {
        let w = group("A2");
        assert_eq!(pulling_triangulation(&w, PullOrder::IdAscending).len(), 4);
    }

    #[test]
    fn stability_in_a2() {
        let w = group("A2");
        let c = w.coxeter_element(&[0, 1]).unwrap();
        let heap = HeapOrder::new(&w, &c);
        let cert = find_stability(&w, &heap, 32, 0).unwrap().unwrap();
        let t13 = w.reflection_of(from_cycles(&w, "(1 3)").unwrap()).unwrap();
        let m1 = slope(&w, &cert.gamma, &cert.y, Reflection(0));
        let m13 = slope(&w, &cert.gamma, &cert.y, t13);
        let m2 = slope(&w, &cert.gamma, &cert.y, Reflection(1));
        assert!(m1 < m13 && m13 < m2);
    }

    #[test]
    fn stability_rejects_non_simply_laced() {
        let w = group("B3");
        let c = w.coxeter_element(&[0, 1, 2]).unwrap();
        let heap = HeapOrder::new(&w, &c);
        assert!(matches!(
            find_stability(&w, &heap, 1, 0),
            Err(GeometryError::NotSimplyLaced(_))
        ));
    }

    #[test]
    fn facet_functional_is_maximized_on_its_coset() {
        let w = group("B3");
        let y = base_point(&w, BasePointMode::Seeded(3));
        let x = Element(17);
        for s in 0..3 {
            let f = facet_functional(&w, x, s);
            let j = 0b111 & !(1 << s);
            let coset = w.coset(x, j);
            let top = w.pair(&f, &vertex(&w, x, &y));
            for z in w.elements() {
                let v = w.pair(&f, &vertex(&w, z, &y));
                if coset.contains(&z) {
                    assert_eq!(v, top);
                } else {
                    assert!(v < top);
                }
            }
        }
    }
}
