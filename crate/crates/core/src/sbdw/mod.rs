//! The concordant pairs `Omega(W, c)`, the triangulation they index, its
//! certificates, the noncrossing Bruhat order and the chain weight identity.

pub mod conjectures;
pub mod export;
pub mod report;
pub mod theorems;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::absolute::{
    commutation_classes, enumerate_twords, rank2_parabolic, reflection_name, CommClass, HeapOrder,
    TChain,
};
use crate::cambrian::{w_c_plus, CambrianError};
use crate::coxeter::{CoxeterElement, CoxeterSystem, Element, Reflection};
use crate::geometry::{
    self, delta_vertices, facet_functional, in_base_chamber, orientation, permutahedron_volume,
    simplex_volume, GeometryError, PullOrder,
};
use crate::numfield::{Scalar, Vector};

/// Largest group the theorem suite and conjecture scans accept by default.
pub const DEFAULT_SUITE_CAP: usize = 1152;

#[derive(Debug, Error)]
pub enum SbdwError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Cambrian(#[from] CambrianError),
    #[error("{label} has {order} elements, above the cap of {cap}")]
    TooLarge {
        label: String,
        order: usize,
        cap: usize,
    },
    #[error("the base point is not in the base chamber")]
    NotInBaseChamber,
}

/// Refuses groups larger than `cap`.
pub fn check_cap(w: &CoxeterSystem, cap: usize) -> Result<(), SbdwError> {
    if w.order() > cap {
        return Err(SbdwError::TooLarge {
            label: w.label().to_string(),
            order: w.order(),
            cap,
        });
    }
    Ok(())
}

/// A concordant pair `(u, chain)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaPair {
    pub u: Element,
    pub chain: TChain,
}

impl OmegaPair {
    /// The Bruhat chain `u pi_0 < ... < u pi_r`.
    pub fn elements(&self, w: &CoxeterSystem) -> Vec<Element> {
        self.chain
            .prefixes(w)
            .into_iter()
            .map(|p| w.mul(self.u, p))
            .collect()
    }
}

fn sort_pairs(w: &CoxeterSystem, pairs: &mut [OmegaPair]) {
    pairs.sort_by(|a, b| {
        (w.length(a.u), a.u, &a.chain).cmp(&(w.length(b.u), b.u, &b.chain))
    });
}

/// Elements of the Bruhat interval `[u, v]`, sorted by id.
pub fn bruhat_interval(w: &CoxeterSystem, u: Element, v: Element) -> Vec<Element> {
    let mut seen = BTreeSet::from([u]);
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for &y in w.bruhat_covers(x) {
            if w.bruhat_leq(y, v) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Saturated chains of `[u, v]`.
pub fn maximal_chains(w: &CoxeterSystem, u: Element, v: Element) -> Vec<Vec<Element>> {
    fn go(w: &CoxeterSystem, v: Element, path: &mut Vec<Element>, out: &mut Vec<Vec<Element>>) {
        let x = *path.last().unwrap();
        if x == v {
            out.push(path.clone());
            return;
        }
        for &y in w.bruhat_covers(x) {
            if w.bruhat_leq(y, v) {
                path.push(y);
                go(w, v, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if w.bruhat_leq(u, v) {
        go(w, v, &mut vec![u], &mut out);
    }
    out
}

fn chain_of_path(w: &CoxeterSystem, path: &[Element]) -> TChain {
    TChain::new(
        path.windows(2)
            .map(|p| {
                w.reflection_of(w.mul(w.inverse(p[0]), p[1]))
                    .expect("Bruhat covers differ by a reflection")
            })
            .collect(),
    )
}

/// `Omega(W, c)` via saturated chains of `[u, uc]` for each `u` in `W_c^+`,
/// ordered by `(l(u), u, reflection sequence)`.
pub fn enumerate_omega(w: &CoxeterSystem, c: &CoxeterElement) -> Vec<OmegaPair> {
    let mut out: Vec<OmegaPair> = w_c_plus(w, c)
        .par_iter()
        .flat_map_iter(|&u| {
            let top = w.mul(u, c.element);
            maximal_chains(w, u, top)
                .into_iter()
                .map(move |p| OmegaPair {
                    u,
                    chain: chain_of_path(w, &p),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    sort_pairs(w, &mut out);
    out
}

/// `Omega(W, c)` by filtering `W_c^+ x MC(W, c)` for concordance.
pub fn omega_oracle(w: &CoxeterSystem, c: &CoxeterElement, chains: &[TChain]) -> Vec<OmegaPair> {
    let mut out = Vec::new();
    for u in w_c_plus(w, c) {
        for ch in chains {
            let pair = OmegaPair {
                u,
                chain: ch.clone(),
            };
            let xs = pair.elements(w);
            if xs
                .windows(2)
                .all(|p| w.length(p[1]) == w.length(p[0]) + 1 && w.bruhat_leq(p[0], p[1]))
            {
                out.push(pair);
            }
        }
    }
    sort_pairs(w, &mut out);
    out
}

/// Everything derived from `(W, c)` that the suites share.
pub struct Context<'a> {
    pub w: &'a CoxeterSystem,
    pub c: CoxeterElement,
    /// Reduced word of `c^-1`, the reverse of the word of `c`.
    pub c_inv_word: Vec<usize>,
    pub heap: HeapOrder,
    pub chains: Vec<TChain>,
    pub w_plus: Vec<Element>,
    pub omega: Vec<OmegaPair>,
    pub deltas: Vec<Vector>,
}

impl<'a> Context<'a> {
    pub fn new(w: &'a CoxeterSystem, c: &CoxeterElement) -> Result<Self, SbdwError> {
        Ok(Context {
            w,
            c: c.clone(),
            c_inv_word: c.word.iter().rev().copied().collect(),
            heap: HeapOrder::new(w, c),
            chains: enumerate_twords(w, c.element),
            w_plus: w_c_plus(w, c),
            omega: enumerate_omega(w, c),
            deltas: delta_vertices(w, c)?,
        })
    }

    /// Chains concordant with `u`.
    pub fn chains_of(&self, u: Element) -> Vec<TChain> {
        self.omega
            .iter()
            .filter(|p| p.u == u)
            .map(|p| p.chain.clone())
            .collect()
    }

    /// `Class_c(u)` with increasing and decreasing flags.
    pub fn concordant_classes(&self, u: Element) -> Vec<CommClass> {
        commutation_classes(&self.heap, &self.chains_of(u))
    }
}

/// One simplex `conv(u pi y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexCell {
    pub u: Element,
    pub chain: TChain,
    /// `u pi_0, ..., u pi_r`.
    pub elements: Vec<Element>,
    pub vertices: Vec<Vector>,
}

pub fn build_cells(w: &CoxeterSystem, omega: &[OmegaPair], y: &[Scalar]) -> Vec<SimplexCell> {
    omega
        .iter()
        .map(|p| {
            let elements = p.elements(w);
            let vertices = elements.iter().map(|&x| w.act_v(x, y)).collect();
            SimplexCell {
                u: p.u,
                chain: p.chain.clone(),
                elements,
                vertices,
            }
        })
        .collect()
}

/// A facet shared by two cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorFacet {
    /// Vertex elements, sorted by id.
    pub facet: Vec<Element>,
    pub cells: [usize; 2],
    pub opposite: [Element; 2],
    pub signs: [i32; 2],
}

/// A facet of one cell lying in a facet `x W_J y` of the permutahedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryFacet {
    pub facet: Vec<Element>,
    pub cell: usize,
    /// Minimal representative of the coset `x W_J`.
    pub coset_rep: Element,
    /// Bit mask of `J`, all generators but one.
    pub generators: u32,
    /// The supporting functional test passed.
    pub supported: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificates {
    pub nondegenerate: bool,
    pub facet_matched: bool,
    pub volume_equal: bool,
    pub cell_volume: String,
    pub oracle_volume: String,
    /// Human-readable counterexamples; empty when every check passes.
    pub failures: Vec<String>,
}

impl Certificates {
    pub fn passed(&self) -> bool {
        self.nondegenerate && self.facet_matched && self.volume_equal
    }
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    pub c: CoxeterElement,
    pub base_point: Vector,
    pub cells: Vec<SimplexCell>,
    pub interior: Vec<InteriorFacet>,
    pub boundary: Vec<BoundaryFacet>,
    pub certificates: Certificates,
}

/// Combinatorial shadow of the facet structure, independent of coordinates.
pub type FacetSignature = (Vec<(Vec<Element>, [usize; 2])>, Vec<(Vec<Element>, usize, Element, u32)>);

impl Triangulation {
    pub fn facet_signature(&self) -> FacetSignature {
        (
            self.interior.iter().map(|f| (f.facet.clone(), f.cells)).collect(),
            self.boundary
                .iter()
                .map(|f| (f.facet.clone(), f.cell, f.coset_rep, f.generators))
                .collect(),
        )
    }

    /// Cell vertex lists as elements.
    pub fn cell_elements(&self) -> Vec<Vec<Element>> {
        self.cells.iter().map(|c| c.elements.clone()).collect()
    }

    pub fn volume(&self) -> Scalar {
        self.cells
            .iter()
            .map(|c| simplex_volume(&c.vertices))
            .fold(Scalar::zero(), |a, b| a + b)
    }
}

fn sign_of(x: &Scalar) -> i32 {
    x.sign()
}

/// Builds the cells for `y` and certifies nondegeneracy, facet matching and
/// volume equality with the pulling oracle.
pub fn build_and_verify(ctx: &Context, y: &[Scalar]) -> Result<Triangulation, SbdwError> {
    let w = ctx.w;
    if !in_base_chamber(w, y) {
        return Err(SbdwError::NotInBaseChamber);
    }
    let r = w.rank();
    let full = (1u32 << r) - 1;
    let cells = build_cells(w, &ctx.omega, y);
    let mut failures = Vec::new();

    let volumes: Vec<Scalar> = cells.par_iter().map(|c| simplex_volume(&c.vertices)).collect();
    let nondegenerate = volumes.iter().all(Scalar::is_positive);
    for (k, v) in volumes.iter().enumerate() {
        if !v.is_positive() {
            failures.push(format!("cell {k} is degenerate"));
        }
    }

    let mut facets: BTreeMap<Vec<Element>, Vec<(usize, Element)>> = BTreeMap::new();
    for (k, cell) in cells.iter().enumerate() {
        for (i, &opp) in cell.elements.iter().enumerate() {
            let mut f: Vec<Element> = cell.elements.clone();
            f.remove(i);
            f.sort();
            facets.entry(f).or_default().push((k, opp));
        }
    }
    let coords: Vec<Vector> = w.elements().map(|x| w.act_v(x, y)).collect();
    let mut supported_cache: HashMap<(Element, usize), bool> = HashMap::new();
    let mut interior = Vec::new();
    let mut boundary = Vec::new();
    let mut facet_matched = true;
    for (facet, owners) in facets {
        let fcoords: Vec<Vector> = facet.iter().map(|x| coords[x.index()].clone()).collect();
        match owners.as_slice() {
            [(k, _)] => {
                let x0 = facet[0];
                let x0inv = w.inverse(x0);
                let used = facet
                    .iter()
                    .fold(0u32, |acc, &x| acc | w.support(w.mul(x0inv, x)));
                if used == full {
                    facet_matched = false;
                    failures.push(format!(
                        "facet {} of cell {k} is unmatched and not on the boundary",
                        show(w, &facet)
                    ));
                    continue;
                }
                let s = (0..r).find(|&s| used >> s & 1 == 0).unwrap();
                let j = full & !(1 << s);
                let rep = w.min_coset_rep(x0, j);
                let supported = *supported_cache.entry((rep, s)).or_insert_with(|| {
                    let f = facet_functional(w, rep, s);
                    let top = w.pair(&f, &coords[rep.index()]);
                    coords.iter().all(|v| w.pair(&f, v) <= top)
                }) && {
                    let f = facet_functional(w, rep, s);
                    let top = w.pair(&f, &coords[rep.index()]);
                    fcoords.iter().all(|v| w.pair(&f, v) == top)
                };
                if !supported {
                    facet_matched = false;
                    failures.push(format!(
                        "boundary facet {} of cell {k} fails the supporting hyperplane test",
                        show(w, &facet)
                    ));
                }
                boundary.push(BoundaryFacet {
                    facet,
                    cell: *k,
                    coset_rep: rep,
                    generators: j,
                    supported,
                });
            }
            [(a, oa), (b, ob)] => {
                let side = |opp: Element| {
                    let mut v = fcoords.clone();
                    v.push(coords[opp.index()].clone());
                    sign_of(&orientation(&v))
                };
                let signs = [side(*oa), side(*ob)];
                if signs[0] == 0 || signs[0] != -signs[1] {
                    facet_matched = false;
                    failures.push(format!(
                        "cells {a} and {b} lie on the same side of facet {}",
                        show(w, &facet)
                    ));
                }
                interior.push(InteriorFacet {
                    facet,
                    cells: [*a, *b],
                    opposite: [*oa, *ob],
                    signs,
                });
            }
            many => {
                facet_matched = false;
                failures.push(format!(
                    "facet {} is shared by {} cells",
                    show(w, &facet),
                    many.len()
                ));
            }
        }
    }

    let total = volumes.iter().fold(Scalar::zero(), |a, b| a + b);
    let oracle = permutahedron_volume(w, y, PullOrder::IdAscending);
    let volume_equal = total == oracle;
    if !volume_equal {
        failures.push(format!("cell volume {total} differs from oracle {oracle}"));
    }
    Ok(Triangulation {
        c: ctx.c.clone(),
        base_point: y.to_vec(),
        cells,
        interior,
        boundary,
        certificates: Certificates {
            nondegenerate,
            facet_matched,
            volume_equal,
            cell_volume: total.to_string(),
            oracle_volume: oracle.to_string(),
            failures,
        },
    })
}

fn show(w: &CoxeterSystem, xs: &[Element]) -> String {
    let names: Vec<String> = xs.iter().map(|&x| w.word_string(x)).collect();
    format!("{{{}}}", names.join(", "))
}

/// Local folding: for every interior facet, each opposite vertex lies
/// strictly above the other cell's lifted hyperplane.
pub fn local_folding_holds(
    w: &CoxeterSystem,
    tri: &Triangulation,
    planes: &[geometry::LiftedHyperplane],
    gamma: &[Scalar],
    eps: &BigRational,
) -> bool {
    let y = &tri.base_point;
    tri.interior.iter().all(|f| {
        (0..2).all(|side| {
            let other = f.cells[1 - side];
            let x = f.opposite[side];
            let h = geometry::height(w, gamma, y, x, eps);
            h > planes[other].eval(&w.act_v(x, y))
        })
    })
}

/// Exact polynomial with rational coefficients, lowest degree first.
pub type Poly = Vec<BigRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JvPolynomial {
    /// Number of chains of each weight.
    pub lhs: Vec<u64>,
    pub rhs: Poly,
    pub equal: bool,
}

/// Number of Bruhat length decreases along `e = pi_0, ..., pi_r`.
pub fn chain_weight(w: &CoxeterSystem, chain: &TChain) -> usize {
    chain
        .prefixes(w)
        .windows(2)
        .filter(|p| w.length(p[1]) < w.length(p[0]))
        .count()
}

/// `r!/|W| prod (d_i + q (h - d_i))`, with `h` taken per irreducible factor.
pub fn jv_rhs(w: &CoxeterSystem) -> Poly {
    let mut poly: Poly = vec![BigRational::one()];
    for comp in w.components() {
        let h = comp.kind.coxeter_number() as i64;
        for d in comp.kind.degrees() {
            let d = d as i64;
            let factor = [
                BigRational::from_integer(d.into()),
                BigRational::from_integer((h - d).into()),
            ];
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (i, a) in poly.iter().enumerate() {
                for (j, b) in factor.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            poly = next;
        }
    }
    let mut fact = BigInt::one();
    for k in 2..=w.rank() {
        fact *= k;
    }
    let scale = BigRational::new(fact, BigInt::from(w.order()));
    poly.iter().map(|a| a * &scale).collect()
}

pub fn jv_polynomial(w: &CoxeterSystem, chains: &[TChain]) -> JvPolynomial {
    let mut lhs = vec![0u64; w.rank() + 1];
    for ch in chains {
        lhs[chain_weight(w, ch)] += 1;
    }
    let rhs = jv_rhs(w);
    let equal = lhs.len() == rhs.len()
        && lhs
            .iter()
            .zip(&rhs)
            .all(|(a, b)| BigRational::from_integer((*a).into()) == *b);
    JvPolynomial { lhs, rhs, equal }
}

/// The noncrossing Bruhat order with its bookkeeping checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcbOrder {
    /// Covers `(x, y, x^-1 y)`, sorted.
    pub covers: Vec<(Element, Element, Reflection)>,
    pub labels_consistent: bool,
    pub diamonds_connected: bool,
    pub canonical_generators: bool,
    pub failures: Vec<String>,
}

/// Reads the cover relations off consecutive cell vertices and checks the
/// diamond-move bookkeeping on each interval `[u, uc]`.
pub fn ncb_order(ctx: &Context, tri: &Triangulation) -> NcbOrder {
    let w = ctx.w;
    let mut covers = BTreeSet::new();
    let mut labels_consistent = true;
    let mut failures = Vec::new();
    for cell in &tri.cells {
        for (i, p) in cell.elements.windows(2).enumerate() {
            let label = w.reflection_of(w.mul(w.inverse(p[0]), p[1]));
            if label != Some(cell.chain.reflections[i]) || w.length(p[1]) != w.length(p[0]) + 1 {
                labels_consistent = false;
                failures.push(format!(
                    "edge {} -> {} has an inconsistent label",
                    w.word_string(p[0]),
                    w.word_string(p[1])
                ));
                continue;
            }
            covers.insert((p[0], p[1], cell.chain.reflections[i]));
        }
    }

    let mut diamonds_connected = true;
    let mut canonical_generators = true;
    let mut canon_cache: HashMap<(Reflection, Reflection), (Reflection, Reflection)> = HashMap::new();
    let mut canonical = |a: Reflection, b: Reflection| {
        *canon_cache.entry((a, b)).or_insert_with(|| {
            let m = rank2_parabolic(w, a, b);
            let (p, q) = (m[0], m[m.len() - 1]);
            (p.min(q), p.max(q))
        })
    };
    for &u in &ctx.w_plus {
        let paths: Vec<Vec<Element>> = tri
            .cells
            .iter()
            .filter(|c| c.u == u)
            .map(|c| c.elements.clone())
            .collect();
        let all: HashSet<Vec<Element>> = paths.iter().cloned().collect();
        let mut seen = HashSet::from([paths[0].clone()]);
        let mut queue = VecDeque::from([paths[0].clone()]);
        while let Some(p) = queue.pop_front() {
            for i in 1..p.len() - 1 {
                let (v, x, top) = (p[i - 1], p[i], p[i + 1]);
                for &y in w.bruhat_covers(v) {
                    if y == x || !w.bruhat_covers(y).contains(&top) {
                        continue;
                    }
                    let lab = |a: Element, b: Element| {
                        w.reflection_of(w.mul(w.inverse(a), b)).expect("cover")
                    };
                    let (t1, t2, t3, t4) = (lab(v, x), lab(x, top), lab(v, y), lab(y, top));
                    let gens = canonical(t1, t2);
                    let pair = |a: Reflection, b: Reflection| (a.min(b), a.max(b));
                    if gens != pair(t1, t2) && gens != pair(t3, t4) {
                        canonical_generators = false;
                        failures.push(format!(
                            "diamond {} < {}, {} < {} has no canonical side",
                            w.word_string(v),
                            w.word_string(x),
                            w.word_string(y),
                            w.word_string(top)
                        ));
                    }
                    let mut q = p.clone();
                    q[i] = y;
                    if !all.contains(&q) {
                        diamonds_connected = false;
                        failures.push(format!("diamond move leaves the cells of {}", w.word_string(u)));
                        continue;
                    }
                    if seen.insert(q.clone()) {
                        queue.push_back(q);
                    }
                }
            }
        }
        if seen.len() != all.len() {
            diamonds_connected = false;
            failures.push(format!(
                "diamond graph of [{0}, {0}c] is disconnected",
                w.word_string(u)
            ));
        }
    }
    NcbOrder {
        covers: covers.into_iter().collect(),
        labels_consistent,
        diamonds_connected,
        canonical_generators,
        failures,
    }
}

/// Reflection names of a chain, for reports.
pub fn chain_names(w: &CoxeterSystem, chain: &TChain) -> Vec<String> {
    chain.reflections.iter().map(|&t| reflection_name(w, t)).collect()
}
