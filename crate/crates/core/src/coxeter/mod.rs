//! Finite Coxeter groups in their reflection representation.
//!
//! Elements are indices into a breadth-first table whose entries are
//! signed permutations of the positive roots. Roots live in simple-root
//! coordinates; coroots in simple-coroot coordinates. Vectors of `V` are
//! stored in fundamental-coweight coordinates, i.e. by their pairings with
//! the simple roots, so the canonical base point is `(1, ..., 1)`.

mod cache;
pub mod perm;
pub mod types;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numfield::{self, FieldError, FieldSpec, Scalar, Vector};
pub use cache::{cache_file_name, CacheStatus, CACHE_FORMAT_VERSION};
pub use types::{parse_label, IrreducibleType};

pub const DEFAULT_SIZE_CAP: usize = 2_000_000;
const MAX_RANK: usize = 8;
const MAX_ROOTS: usize = 128;

#[derive(Debug, Error)]
pub enum CoxeterError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("group too large or not finite: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("cache: {0}")]
    Cache(String),
}

/// Index of a group element in the element table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element(pub u32);

impl Element {
    pub const IDENTITY: Element = Element(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of a reflection, equal to the index of its positive root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Reflection(pub u16);

impl Reflection {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A subset of `T` as a bitset (at most 128 reflections).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TSet(pub u128);

impl TSet {
    pub fn contains(self, t: Reflection) -> bool {
        self.0 >> t.0 & 1 == 1
    }
    pub fn insert(&mut self, t: Reflection) {
        self.0 |= 1u128 << t.0;
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn is_subset(self, other: TSet) -> bool {
        self.0 & !other.0 == 0
    }
    pub fn intersection(self, other: TSet) -> TSet {
        TSet(self.0 & other.0)
    }
    pub fn union(self, other: TSet) -> TSet {
        TSet(self.0 | other.0)
    }
    pub fn iter(self) -> impl Iterator<Item = Reflection> {
        (0..128u16).filter(move |&i| self.0 >> i & 1 == 1).map(Reflection)
    }
}

impl FromIterator<Reflection> for TSet {
    fn from_iter<I: IntoIterator<Item = Reflection>>(iter: I) -> Self {
        let mut s = TSet::default();
        for t in iter {
            s.insert(t);
        }
        s
    }
}

/// How a group is specified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupSpec {
    Label(String),
    Matrix(Vec<Vec<u32>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub kind: IrreducibleType,
    pub nodes: Vec<usize>,
}

/// A standard Coxeter element with its lexicographically least reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterElement {
    pub element: Element,
    pub word: Vec<usize>,
}

impl CoxeterElement {
    pub fn inverse(&self, w: &CoxeterSystem) -> CoxeterElement {
        let element = w.inverse(self.element);
        CoxeterElement {
            element,
            word: w.reduced_word(element),
        }
    }

    pub fn word_string(&self) -> String {
        format_word(&self.word)
    }
}

type Key = [u16; MAX_RANK];

#[derive(Debug)]
pub struct CoxeterSystem {
    label: String,
    matrix: Vec<Vec<u32>>,
    rank: usize,
    field: Arc<FieldSpec>,
    cartan: Vec<Vec<Scalar>>,
    components: Vec<Component>,
    roots: Vec<Vector>,
    coroots: Vec<Vector>,
    coroots_v: Vec<Vector>,
    perms: Vec<u16>,
    index: HashMap<Key, u32>,
    length: Vec<u16>,
    right_mul: Vec<u32>,
    left_mul: Vec<u32>,
    inverse: Vec<u32>,
    t_right: Vec<TSet>,
    t_left: Vec<TSet>,
    refl_elem: Vec<Element>,
    elem_refl: Vec<u16>,
    w0: Element,
    covers: OnceLock<Vec<Vec<Element>>>,
    reflection_lengths: OnceLock<Vec<u8>>,
}

fn crystallographic_lengths(
    matrix: &[Vec<u32>],
    nodes: &[usize],
    hint: Option<Vec<u32>>,
) -> Option<Vec<Ratio<i64>>> {
    if nodes
        .iter()
        .any(|&i| nodes.iter().any(|&j| !matches!(matrix[i][j], 1 | 2 | 3 | 4 | 6)))
    {
        return None;
    }
    if let Some(h) = hint {
        return Some(h.into_iter().map(|x| Ratio::from_integer(x as i64)).collect());
    }
    let k = nodes.len();
    let mut len: Vec<Option<Ratio<i64>>> = vec![None; k];
    len[0] = Some(Ratio::from_integer(1));
    let mut queue = vec![0usize];
    while let Some(a) = queue.pop() {
        for b in 0..k {
            let m = matrix[nodes[a]][nodes[b]];
            if a == b || m == 2 {
                continue;
            }
            let la = len[a].unwrap();
            let ratio = match m {
                3 => Ratio::from_integer(1),
                4 => Ratio::new(1, 2),
                _ => Ratio::new(1, 3),
            };
            let want = la * ratio;
            match len[b] {
                None => {
                    len[b] = Some(want);
                    queue.push(b);
                }
                Some(lb) => {
                    let ok = match m {
                        3 => lb == la,
                        4 => lb == la * 2 || lb * 2 == la,
                        _ => lb == la * 3 || lb * 3 == la,
                    };
                    if !ok {
                        return None;
                    }
                }
            }
        }
    }
    Some(len.into_iter().map(|l| l.unwrap()).collect())
}

impl CoxeterSystem {
    pub fn from_label(label: &str) -> Result<Self, CoxeterError> {
        Self::build(&GroupSpec::Label(label.to_string()), DEFAULT_SIZE_CAP)
    }

    /// Builds the full tables; `size_cap` bounds the number of elements.
    pub fn build(spec: &GroupSpec, size_cap: usize) -> Result<Self, CoxeterError> {
        let (matrix, label, hints) = Self::resolve(spec)?;
        let rank = matrix.len();
        let (field, cartan, comps) = Self::realize(&matrix, &hints)?;
        let (roots, coroots, simple_perm) = Self::root_system(rank, &cartan)?;
        let n = roots.len();
        let perms = Self::enumerate_elements(rank, n, &simple_perm, size_cap)?;
        let sys = Self::assemble(
            label, matrix, field, cartan, comps, roots, coroots, simple_perm, perms,
        );
        sys.check_degrees()?;
        Ok(sys)
    }

    fn resolve(
        spec: &GroupSpec,
    ) -> Result<(Vec<Vec<u32>>, String, Vec<Option<Vec<u32>>>), CoxeterError> {
        match spec {
            GroupSpec::Label(l) => {
                let types = parse_label(l)?;
                let matrix = types::product_matrix(&types);
                let hints = types.iter().map(|t| t.root_lengths()).collect();
                let label = types
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join("x");
                Ok((matrix, label, hints))
            }
            GroupSpec::Matrix(m) => {
                let n = m.len();
                if n == 0 || n > MAX_RANK {
                    return Err(CoxeterError::InvalidInput(format!(
                        "rank must be between 1 and {MAX_RANK}"
                    )));
                }
                for i in 0..n {
                    if m[i].len() != n {
                        return Err(CoxeterError::InvalidInput("matrix is not square".into()));
                    }
                    for j in 0..n {
                        let v = m[i][j];
                        if m[j][i] != v || (i == j) != (v == 1) || v == 0 {
                            return Err(CoxeterError::InvalidInput(format!(
                                "malformed Coxeter matrix entry ({i},{j}) = {v}"
                            )));
                        }
                    }
                }
                let comps = types::components(m);
                Ok((m.clone(), "matrix".to_string(), vec![None; comps.len()]))
            }
        }
    }

    #[allow(clippy::type_complexity)]
    fn realize(
        matrix: &[Vec<u32>],
        hints: &[Option<Vec<u32>>],
    ) -> Result<(Arc<FieldSpec>, Vec<Vec<Scalar>>, Vec<(Vec<usize>, bool)>), CoxeterError> {
        let rank = matrix.len();
        if rank > MAX_RANK {
            return Err(CoxeterError::InvalidInput(format!("rank exceeds {MAX_RANK}")));
        }
        let comps = types::components(matrix);
        let mut lengths: Vec<Option<Vec<Ratio<i64>>>> = Vec::new();
        let mut needed = Vec::new();
        for (k, nodes) in comps.iter().enumerate() {
            let hint = hints.get(k).cloned().flatten();
            let l = crystallographic_lengths(matrix, nodes, hint);
            if l.is_none() {
                for &i in nodes {
                    for &j in nodes {
                        if i != j {
                            needed.push(matrix[i][j]);
                        }
                    }
                }
            }
            lengths.push(l);
        }
        let field = numfield::field_for_entries(&needed, numfield::DEFAULT_MAX_DEGREE)?;
        let mut cartan = vec![vec![Scalar::zero(); rank]; rank];
        for (nodes, lens) in comps.iter().zip(&lengths) {
            for (a, &i) in nodes.iter().enumerate() {
                for (b, &j) in nodes.iter().enumerate() {
                    let m = matrix[i][j];
                    cartan[i][j] = if i == j {
                        Scalar::from_int(2)
                    } else if m == 2 {
                        Scalar::zero()
                    } else if let Some(l) = lens {
                        let k = match m {
                            3 => 1,
                            4 => 2,
                            _ => 3,
                        };
                        Scalar::from_int(if l[a] > l[b] { -k } else { -1 })
                    } else {
                        -field.two_cos_pi_over(m)?
                    };
                }
            }
        }
        let comps = comps
            .into_iter()
            .zip(lengths)
            .map(|(c, l)| (c, l.is_some()))
            .collect();
        Ok((field, cartan, comps))
    }

    #[allow(clippy::type_complexity)]
    fn root_system(
        rank: usize,
        cartan: &[Vec<Scalar>],
    ) -> Result<(Vec<Vector>, Vec<Vector>, Vec<Vec<u16>>), CoxeterError> {
        let unit = |i: usize| -> Vector {
            (0..rank)
                .map(|k| if k == i { Scalar::one() } else { Scalar::zero() })
                .collect()
        };
        let mut roots: Vec<Vector> = (0..rank).map(unit).collect();
        let mut coroots: Vec<Vector> = (0..rank).map(unit).collect();
        let mut lookup: HashMap<Vector, usize> =
            roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        // Reflection s_i on roots: x - <x, b_i^v> b_i; on coroots: y - <b_i, y> b_i^v.
        let reflect_root = |x: &Vector, i: usize| -> Vector {
            let p = numfield::dot(x, &cartan.iter().map(|row| row[i].clone()).collect::<Vec<_>>());
            let mut y = x.clone();
            y[i] = &y[i] - &p;
            y
        };
        let reflect_coroot = |x: &Vector, i: usize| -> Vector {
            let p = numfield::dot(&cartan[i], x);
            let mut y = x.clone();
            y[i] = &y[i] - &p;
            y
        };
        let mut k = 0;
        while k < roots.len() {
            for i in 0..rank {
                if k == i {
                    continue;
                }
                let y = reflect_root(&roots[k], i);
                if !lookup.contains_key(&y) {
                    if y.iter().any(|c| c.is_negative()) {
                        return Err(CoxeterError::InvalidInput(
                            "reflection produced a mixed-sign root".into(),
                        ));
                    }
                    let cy = reflect_coroot(&coroots[k], i);
                    lookup.insert(y.clone(), roots.len());
                    roots.push(y);
                    coroots.push(cy);
                    if roots.len() > MAX_ROOTS {
                        return Err(CoxeterError::TooLarge(format!(
                            "more than {MAX_ROOTS} positive roots"
                        )));
                    }
                }
            }
            k += 1;
        }
        let n = roots.len();
        let mut simple_perm = vec![vec![0u16; 2 * n]; rank];
        for (i, sp) in simple_perm.iter_mut().enumerate() {
            for k in 0..n {
                if k == i {
                    sp[k] = (n + i) as u16;
                    sp[n + k] = i as u16;
                    continue;
                }
                let j = lookup[&reflect_root(&roots[k], i)];
                sp[k] = j as u16;
                sp[n + k] = (n + j) as u16;
            }
        }
        Ok((roots, coroots, simple_perm))
    }

    fn enumerate_elements(
        rank: usize,
        n: usize,
        simple_perm: &[Vec<u16>],
        size_cap: usize,
    ) -> Result<Vec<u16>, CoxeterError> {
        let mut perms: Vec<u16> = (0..n as u16).collect();
        let mut index: HashMap<Key, u32> = HashMap::new();
        index.insert(key_of(&perms[0..n], rank), 0);
        let mut k = 0usize;
        let mut count = 1usize;
        while k < count {
            for i in 0..rank {
                let w = &perms[k * n..(k + 1) * n];
                if w[i] as usize >= n {
                    continue;
                }
                let next: Vec<u16> = (0..n)
                    .map(|j| apply_signed(w, n, simple_perm[i][j] as usize) as u16)
                    .collect();
                let key = key_of(&next, rank);
                if index.contains_key(&key) {
                    continue;
                }
                index.insert(key, count as u32);
                perms.extend_from_slice(&next);
                count += 1;
                if count > size_cap {
                    return Err(CoxeterError::TooLarge(format!(
                        "more than {size_cap} elements"
                    )));
                }
            }
            k += 1;
        }
        Ok(perms)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        label: String,
        matrix: Vec<Vec<u32>>,
        field: Arc<FieldSpec>,
        cartan: Vec<Vec<Scalar>>,
        comps: Vec<(Vec<usize>, bool)>,
        roots: Vec<Vector>,
        coroots: Vec<Vector>,
        simple_perm: Vec<Vec<u16>>,
        perms: Vec<u16>,
    ) -> Self {
        let rank = matrix.len();
        let n = roots.len();
        let size = perms.len() / n.max(1);
        let size = if n == 0 { 1 } else { size };
        let mut index = HashMap::with_capacity(size);
        for w in 0..size {
            index.insert(key_of(&perms[w * n..(w + 1) * n], rank), w as u32);
        }
        let lookup = |p: &[u16]| -> u32 { index[&key_of(p, rank)] };
        let mut length = vec![0u16; size];
        let mut t_right = vec![TSet::default(); size];
        let mut inverse = vec![0u32; size];
        let mut right_mul = vec![0u32; size * rank];
        let mut scratch = vec![0u16; n];
        for w in 0..size {
            let p = &perms[w * n..(w + 1) * n];
            let mut tr = TSet::default();
            for (t, &img) in p.iter().enumerate() {
                if img as usize >= n {
                    tr.insert(Reflection(t as u16));
                }
            }
            t_right[w] = tr;
            length[w] = tr.len() as u16;
            // Inverse: w^{-1}(b_m) = b_k where w(b_k) = +-b_m.
            for (k, &img) in p.iter().enumerate() {
                let img = img as usize;
                if img < n {
                    scratch[img] = k as u16;
                } else {
                    scratch[img - n] = (n + k) as u16;
                }
            }
            inverse[w] = lookup(&scratch);
            for i in 0..rank {
                let next: Vec<u16> = (0..n)
                    .map(|j| apply_signed(p, n, simple_perm[i][j] as usize) as u16)
                    .collect();
                right_mul[w * rank + i] = lookup(&next);
            }
        }
        let t_left: Vec<TSet> = (0..size).map(|w| t_right[inverse[w] as usize]).collect();
        let mut left_mul = vec![0u32; size * rank];
        for w in 0..size {
            for i in 0..rank {
                let winv = inverse[w] as usize;
                left_mul[w * rank + i] = inverse[right_mul[winv * rank + i] as usize];
            }
        }
        // Reflections: the root b_k discovered as s_i(b_j) has reflection s_i t_j s_i.
        let mut refl_elem: Vec<Element> = Vec::with_capacity(n);
        for i in 0..rank {
            refl_elem.push(Element(right_mul[i]));
        }
        let mut found = vec![false; n];
        for f in found.iter_mut().take(rank) {
            *f = true;
        }
        refl_elem.resize(n, Element(0));
        let mut changed = true;
        while changed {
            changed = false;
            for j in 0..n {
                if !found[j] {
                    continue;
                }
                for i in 0..rank {
                    let k = simple_perm[i][j] as usize;
                    if k < n && !found[k] {
                        let t = refl_elem[j].index();
                        let st = left_mul[t * rank + i] as usize;
                        refl_elem[k] = Element(right_mul[st * rank + i]);
                        found[k] = true;
                        changed = true;
                    }
                }
            }
        }
        let mut elem_refl = vec![u16::MAX; size];
        for (t, e) in refl_elem.iter().enumerate() {
            elem_refl[e.index()] = t as u16;
        }
        let w0 = Element(
            (0..size)
                .max_by_key(|&w| length[w])
                .unwrap_or(0) as u32,
        );
        let coroots_v = coroots
            .iter()
            .map(|cv| (0..rank).map(|s| numfield::dot(&cartan[s], cv)).collect())
            .collect();
        let components = comps
            .into_iter()
            .map(|(nodes, _)| {
                let kind = types::classify(&matrix, &nodes).unwrap_or(IrreducibleType::A(0));
                Component { kind, nodes }
            })
            .collect();
        CoxeterSystem {
            label,
            matrix,
            rank,
            field,
            cartan,
            components,
            roots,
            coroots,
            coroots_v,
            perms,
            index,
            length,
            right_mul,
            left_mul,
            inverse,
            t_right,
            t_left,
            refl_elem,
            elem_refl,
            w0,
            covers: OnceLock::new(),
            reflection_lengths: OnceLock::new(),
        }
    }

    fn check_degrees(&self) -> Result<(), CoxeterError> {
        if self
            .components
            .iter()
            .any(|c| c.kind == IrreducibleType::A(0) || c.kind.rank() != c.nodes.len())
        {
            return Err(CoxeterError::TooLarge(
                "Coxeter graph is not of finite type".into(),
            ));
        }
        let d = self.degrees();
        let prod: u64 = d.iter().map(|&x| x as u64).product();
        let sum: usize = d.iter().map(|&x| x as usize - 1).sum();
        if prod != self.order() as u64 || sum != self.num_reflections() {
            return Err(CoxeterError::InvalidInput(format!(
                "degree check failed: prod {prod} vs |W| {}, sum {sum} vs N {}",
                self.order(),
                self.num_reflections()
            )));
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    /// `cartan[i][j] = <b_i, b_j^v>`.
    pub fn cartan(&self) -> &[Vec<Scalar>] {
        &self.cartan
    }
    pub fn components(&self) -> &[Component] {
        &self.components
    }
    pub fn order(&self) -> usize {
        self.length.len()
    }
    pub fn num_reflections(&self) -> usize {
        self.roots.len()
    }
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order() as u32).map(Element)
    }
    pub fn reflections(&self) -> impl Iterator<Item = Reflection> + '_ {
        (0..self.num_reflections() as u16).map(Reflection)
    }
    pub fn identity(&self) -> Element {
        Element::IDENTITY
    }
    pub fn longest_element(&self) -> Element {
        self.w0
    }
    pub fn is_simple(&self, t: Reflection) -> bool {
        t.index() < self.rank
    }
    pub fn all_reflections(&self) -> TSet {
        self.reflections().collect()
    }

    /// Positive root of `t` in simple-root coordinates.
    pub fn root(&self, t: Reflection) -> &Vector {
        &self.roots[t.index()]
    }
    /// Coroot of `t` in simple-coroot coordinates.
    pub fn coroot(&self, t: Reflection) -> &Vector {
        &self.coroots[t.index()]
    }
    /// Coroot of `t` as a vector of `V` in fundamental-coweight coordinates.
    pub fn coroot_v(&self, t: Reflection) -> &Vector {
        &self.coroots_v[t.index()]
    }

    pub fn simple(&self, i: usize) -> Element {
        Element(self.right_mul[i])
    }
    pub fn length(&self, w: Element) -> usize {
        self.length[w.index()] as usize
    }
    pub fn inverse(&self, w: Element) -> Element {
        Element(self.inverse[w.index()])
    }
    /// `w s_i`.
    pub fn mul_simple(&self, w: Element, i: usize) -> Element {
        Element(self.right_mul[w.index() * self.rank + i])
    }
    /// `s_i w`.
    pub fn simple_mul(&self, i: usize, w: Element) -> Element {
        Element(self.left_mul[w.index() * self.rank + i])
    }
    pub fn mul(&self, a: Element, b: Element) -> Element {
        if b == Element::IDENTITY {
            return a;
        }
        if a == Element::IDENTITY {
            return b;
        }
        let n = self.num_reflections();
        let pa = self.perm(a);
        let pb = self.perm(b);
        let mut key = [u16::MAX; MAX_RANK];
        for (i, k) in key.iter_mut().enumerate().take(self.rank) {
            *k = apply_signed(pa, n, pb[i] as usize) as u16;
        }
        Element(self.index[&key])
    }
    pub fn mul_all(&self, items: &[Element]) -> Element {
        items
            .iter()
            .fold(Element::IDENTITY, |acc, &x| self.mul(acc, x))
    }
    /// Conjugate `a b a^{-1}`.
    pub fn conjugate(&self, a: Element, b: Element) -> Element {
        self.mul(self.mul(a, b), self.inverse(a))
    }

    fn perm(&self, w: Element) -> &[u16] {
        let n = self.num_reflections();
        &self.perms[w.index() * n..(w.index() + 1) * n]
    }

    /// Signed root index `w(b_k)`: values `>= N` denote negatives.
    pub fn apply_root(&self, w: Element, k: usize) -> usize {
        apply_signed(self.perm(w), self.num_reflections(), k)
    }

    /// Coordinates of the root with signed index `k`.
    pub fn signed_root(&self, k: usize) -> Vector {
        let n = self.num_reflections();
        if k < n {
            self.roots[k].clone()
        } else {
            self.roots[k - n].iter().map(|x| -x).collect()
        }
    }

    pub fn t_right(&self, w: Element) -> TSet {
        self.t_right[w.index()]
    }
    pub fn t_left(&self, w: Element) -> TSet {
        self.t_left[w.index()]
    }
    pub fn is_right_descent(&self, w: Element, i: usize) -> bool {
        self.t_right[w.index()].contains(Reflection(i as u16))
    }
    pub fn is_left_descent(&self, w: Element, i: usize) -> bool {
        self.t_left[w.index()].contains(Reflection(i as u16))
    }
    pub fn right_descents(&self, w: Element) -> Vec<usize> {
        (0..self.rank).filter(|&i| self.is_right_descent(w, i)).collect()
    }
    pub fn left_descents(&self, w: Element) -> Vec<usize> {
        (0..self.rank).filter(|&i| self.is_left_descent(w, i)).collect()
    }

    pub fn reflection_element(&self, t: Reflection) -> Element {
        self.refl_elem[t.index()]
    }
    pub fn reflection_of(&self, w: Element) -> Option<Reflection> {
        match self.elem_refl[w.index()] {
            u16::MAX => None,
            t => Some(Reflection(t)),
        }
    }

    /// Lexicographically least reduced word (0-based generator indices).
    pub fn reduced_word(&self, w: Element) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(w));
        let mut cur = w;
        while cur != Element::IDENTITY {
            let i = (0..self.rank)
                .find(|&i| self.is_left_descent(cur, i))
                .expect("nonidentity element has a descent");
            word.push(i);
            cur = self.simple_mul(i, cur);
        }
        word
    }

    pub fn element_of_word(&self, word: &[usize]) -> Result<Element, CoxeterError> {
        let mut w = Element::IDENTITY;
        for &i in word {
            if i >= self.rank {
                return Err(CoxeterError::InvalidInput(format!(
                    "generator index {} out of range",
                    i + 1
                )));
            }
            w = self.mul_simple(w, i);
        }
        Ok(w)
    }

    /// `t_i = s_1 ... s_{i-1} s_i s_{i-1} ... s_1`; errors on non-reduced words.
    pub fn inversion_sequence(&self, word: &[usize]) -> Result<Vec<Reflection>, CoxeterError> {
        let n = self.num_reflections();
        let mut prefix = Element::IDENTITY;
        let mut out = Vec::with_capacity(word.len());
        for &i in word {
            if i >= self.rank {
                return Err(CoxeterError::InvalidInput("generator out of range".into()));
            }
            let k = self.apply_root(prefix, i);
            if k >= n {
                return Err(CoxeterError::InvalidInput("word is not reduced".into()));
            }
            out.push(Reflection(k as u16));
            prefix = self.mul_simple(prefix, i);
        }
        Ok(out)
    }

    /// Bruhat order via the recursion `u <= w <=> min(u, us) <= ws` for `s` a right descent of `w`.
    pub fn bruhat_leq(&self, u: Element, w: Element) -> bool {
        let (mut u, mut w) = (u, w);
        loop {
            if u == Element::IDENTITY {
                return true;
            }
            let (lu, lw) = (self.length(u), self.length(w));
            if lu > lw {
                return false;
            }
            if lu == lw {
                return u == w;
            }
            let i = (0..self.rank)
                .find(|&i| self.is_right_descent(w, i))
                .expect("w has a descent");
            if self.is_right_descent(u, i) {
                u = self.mul_simple(u, i);
            }
            w = self.mul_simple(w, i);
        }
    }

    /// Upper Bruhat covers `{ut : l(ut) = l(u) + 1}`, sorted by id.
    pub fn bruhat_covers(&self, u: Element) -> &[Element] {
        let all = self.covers.get_or_init(|| {
            self.elements()
                .map(|w| {
                    let lw = self.length(w);
                    let mut c: Vec<Element> = self
                        .refl_elem
                        .iter()
                        .map(|&t| self.mul(w, t))
                        .filter(|&v| self.length(v) == lw + 1)
                        .collect();
                    c.sort_unstable();
                    c
                })
                .collect()
        });
        &all[u.index()]
    }

    /// Weak order comparison: right weak uses left inversion sets.
    pub fn weak_leq(&self, u: Element, v: Element, side: Side) -> bool {
        match side {
            Side::Right => self.t_left(u).is_subset(self.t_left(v)),
            Side::Left => self.t_right(u).is_subset(self.t_right(v)),
        }
    }

    pub fn weak_meet(&self, u: Element, v: Element, side: Side) -> Element {
        match side {
            Side::Right => {
                let bound = self.t_left(u).intersection(self.t_left(v));
                let mut w = Element::IDENTITY;
                'grow: loop {
                    for i in 0..self.rank {
                        let x = self.mul_simple(w, i);
                        if self.length(x) > self.length(w) && self.t_left(x).is_subset(bound) {
                            w = x;
                            continue 'grow;
                        }
                    }
                    return w;
                }
            }
            Side::Left => {
                let m = self.weak_meet(self.inverse(u), self.inverse(v), Side::Right);
                self.inverse(m)
            }
        }
    }

    pub fn weak_join(&self, u: Element, v: Element, side: Side) -> Element {
        let w0 = self.w0;
        match side {
            Side::Right => self.mul(
                w0,
                self.weak_meet(self.mul(w0, u), self.mul(w0, v), Side::Right),
            ),
            Side::Left => self.mul(
                self.weak_meet(self.mul(u, w0), self.mul(v, w0), Side::Left),
                w0,
            ),
        }
    }

    /// All distinct products of the simple reflections in some order, with
    /// the lexicographically least word producing each, sorted by element id.
    pub fn coxeter_elements(&self) -> Vec<(Element, Vec<usize>)> {
        let mut seen: HashMap<Element, Vec<usize>> = HashMap::new();
        let mut perm: Vec<usize> = (0..self.rank).collect();
        loop {
            let c = self.element_of_word(&perm).expect("valid word");
            seen.entry(c).or_insert_with(|| perm.clone());
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let mut out: Vec<(Element, Vec<usize>)> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Checks that `word` uses every generator exactly once.
    pub fn coxeter_element_from_word(&self, word: &[usize]) -> Result<Element, CoxeterError> {
        let mut sorted = word.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.rank).collect::<Vec<_>>() {
            return Err(CoxeterError::InvalidInput(format!(
                "not a standard Coxeter word: each of the {} generators must appear exactly once",
                self.rank
            )));
        }
        self.element_of_word(word)
    }

    /// Validates a standard Coxeter word and normalizes its reduced word.
    pub fn coxeter_element(&self, word: &[usize]) -> Result<CoxeterElement, CoxeterError> {
        let element = self.coxeter_element_from_word(word)?;
        Ok(CoxeterElement {
            element,
            word: self.reduced_word(element),
        })
    }

    pub fn standard_coxeter_elements(&self) -> Vec<CoxeterElement> {
        self.coxeter_elements()
            .into_iter()
            .map(|(element, _)| CoxeterElement {
                element,
                word: self.reduced_word(element),
            })
            .collect()
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self
            .components
            .iter()
            .flat_map(|c| c.kind.degrees())
            .collect();
        d.sort_unstable();
        d
    }
    pub fn exponents(&self) -> Vec<u32> {
        self.degrees().into_iter().map(|d| d - 1).collect()
    }
    /// Largest degree; equals the Coxeter number for irreducible groups.
    pub fn coxeter_number(&self) -> u32 {
        self.degrees().into_iter().max().unwrap_or(0)
    }
    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }
    pub fn is_simply_laced(&self) -> bool {
        self.matrix.iter().flatten().all(|&m| m <= 3)
    }

    /// `w x` for `x` in fundamental-coweight coordinates.
    pub fn act_v(&self, w: Element, x: &[Scalar]) -> Vector {
        let winv = self.inverse(w);
        (0..self.rank)
            .map(|s| {
                let k = self.apply_root(winv, s);
                let (root, neg) = if k < self.num_reflections() {
                    (&self.roots[k], false)
                } else {
                    (&self.roots[k - self.num_reflections()], true)
                };
                let p = numfield::dot(root, x);
                if neg {
                    -p
                } else {
                    p
                }
            })
            .collect()
    }

    /// `w gamma` for `gamma` in simple-root coordinates.
    pub fn act_vstar(&self, w: Element, gamma: &[Scalar]) -> Vector {
        let mut out = vec![Scalar::zero(); self.rank];
        for (i, g) in gamma.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let r = self.signed_root(self.apply_root(w, i));
            for (o, x) in out.iter_mut().zip(&r) {
                *o += &(g * x);
            }
        }
        out
    }

    /// Pairing of `gamma` (simple-root coordinates) with `x` (fundamental-coweight coordinates).
    pub fn pair(&self, gamma: &[Scalar], x: &[Scalar]) -> Scalar {
        numfield::dot(gamma, x)
    }

    /// The canonical base point with all simple pairings 1.
    pub fn rho(&self) -> Vector {
        vec![Scalar::one(); self.rank]
    }

    /// Reflection length, cached for all elements.
    pub fn reflection_length(&self, w: Element) -> usize {
        let all = self.reflection_lengths.get_or_init(|| {
            self.elements()
                .map(|w| {
                    let rows: Vec<Vector> = (0..self.rank)
                        .map(|s| {
                            let mut e = vec![Scalar::zero(); self.rank];
                            e[s] = Scalar::one();
                            let img = self.act_v(w, &e);
                            numfield::vsub(&img, &e)
                        })
                        .collect();
                    numfield::rank(&rows) as u8
                })
                .collect()
        });
        all[w.index()] as usize
    }

    /// Elements of the coset `w W_J` for a generator mask `j`.
    pub fn coset(&self, w: Element, j: u32) -> Vec<Element> {
        let mut out = vec![w];
        let mut seen = std::collections::HashSet::from([w]);
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for i in 0..self.rank {
                if j >> i & 1 == 1 {
                    let y = self.mul_simple(x, i);
                    if seen.insert(y) {
                        out.push(y);
                    }
                }
            }
            k += 1;
        }
        out
    }

    /// Minimal-length representative of `w W_J`.
    pub fn min_coset_rep(&self, w: Element, j: u32) -> Element {
        let mut w = w;
        'down: loop {
            for i in 0..self.rank {
                if j >> i & 1 == 1 && self.is_right_descent(w, i) {
                    w = self.mul_simple(w, i);
                    continue 'down;
                }
            }
            return w;
        }
    }

    /// Generators appearing in any reduced word of `w`.
    pub fn support(&self, w: Element) -> u32 {
        self.reduced_word(w).iter().fold(0, |acc, &i| acc | 1 << i)
    }

    /// Human-readable word such as `s1s2s1`, or `e`.
    pub fn word_string(&self, w: Element) -> String {
        format_word(&self.reduced_word(w))
    }

    pub(crate) fn raw_perms(&self) -> &[u16] {
        &self.perms
    }

    pub(crate) fn from_parts(
        spec: &GroupSpec,
        perms: Vec<u16>,
    ) -> Result<Self, CoxeterError> {
        let (matrix, label, hints) = Self::resolve(spec)?;
        let rank = matrix.len();
        let (field, cartan, comps) = Self::realize(&matrix, &hints)?;
        let (roots, coroots, simple_perm) = Self::root_system(rank, &cartan)?;
        let n = roots.len();
        if n == 0 || !perms.len().is_multiple_of(n) || perms[..n] != (0..n as u16).collect::<Vec<_>>()[..] {
            return Err(CoxeterError::Cache("element table does not match root system".into()));
        }
        let sys = Self::assemble(
            label, matrix, field, cartan, comps, roots, coroots, simple_perm, perms,
        );
        sys.check_degrees()?;
        if sys.index.len() != sys.order() {
            return Err(CoxeterError::Cache("duplicate elements in cached table".into()));
        }
        Ok(sys)
    }
}

fn key_of(p: &[u16], rank: usize) -> Key {
    let mut key = [u16::MAX; MAX_RANK];
    key[..rank].copy_from_slice(&p[..rank]);
    key
}

fn apply_signed(p: &[u16], n: usize, k: usize) -> usize {
    if k < n {
        p[k] as usize
    } else {
        let img = p[k - n] as usize;
        if img < n {
            img + n
        } else {
            img - n
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Formats a 0-based word as `s1s2...`; the empty word is `e`.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|i| format!("s{}", i + 1)).collect()
}

/// Parses `s1s2s3`, `1,2,3`, `1 2 3`, or `123` into 0-based indices.
pub fn parse_word(text: &str) -> Result<Vec<usize>, CoxeterError> {
    let t = text.trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    let bad = || CoxeterError::InvalidInput(format!("malformed Coxeter word '{text}'"));
    let parts: Vec<&str> = if t.contains('s') {
        t.split('s').filter(|p| !p.is_empty()).collect()
    } else if t.contains(',') || t.contains(' ') {
        t.split([',', ' ']).filter(|p| !p.is_empty()).collect()
    } else {
        t.split("").filter(|p| !p.is_empty()).collect()
    };
    parts
        .into_iter()
        .map(|p| {
            let k: usize = p.trim().parse().map_err(|_| bad())?;
            if k == 0 {
                Err(bad())
            } else {
                Ok(k - 1)
            }
        })
        .collect()
}
