//! Evidence scans for the open lattice-theoretic questions about the
//! noncrossing Bruhat order and the concordancy posets.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::theorems::CheckResult;
use super::{check_cap, ncb_order, Context, SbdwError, Triangulation};
use crate::coxeter::Element;
use crate::geometry::{cone_contains, Cone};

/// A finite poset stored as up-set and down-set bitsets.
#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    up: Vec<Vec<u64>>,
    down: Vec<Vec<u64>>,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(set: &mut [u64], i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn count(a: &[u64]) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

impl Poset {
    /// Reflexive-transitive closure of the given relation, which must be acyclic.
    pub fn from_relations(n: usize, rel: &[(usize, usize)]) -> Poset {
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in rel {
            succ[a].push(b);
        }
        let mut up: Vec<Option<Vec<u64>>> = vec![None; n];
        fn visit(x: usize, succ: &[Vec<usize>], up: &mut Vec<Option<Vec<u64>>>, n: usize) {
            if up[x].is_some() {
                return;
            }
            let mut s = vec![0u64; words(n)];
            set_bit(&mut s, x);
            for &y in &succ[x] {
                visit(y, succ, up, n);
                for (a, b) in s.iter_mut().zip(up[y].as_ref().unwrap()) {
                    *a |= b;
                }
            }
            up[x] = Some(s);
        }
        for x in 0..n {
            visit(x, &succ, &mut up, n);
        }
        let up: Vec<Vec<u64>> = up.into_iter().map(Option::unwrap).collect();
        let mut down = vec![vec![0u64; words(n)]; n];
        for (x, ux) in up.iter().enumerate() {
            for (y, d) in down.iter_mut().enumerate() {
                if bit(ux, y) {
                    set_bit(d, x);
                }
            }
        }
        Poset { n, up, down }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        bit(&self.up[a], b)
    }

    fn extremum(&self, common: &[u64], sets: &[Vec<u64>]) -> Option<usize> {
        (0..self.n).find(|&z| bit(common, z) && subset(common, &sets[z]))
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.extremum(&and(&self.up[a], &self.up[b]), &self.up)
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.extremum(&and(&self.down[a], &self.down[b]), &self.down)
    }

    /// First pair without a meet or a join.
    pub fn lattice_violation(&self) -> Option<(usize, usize)> {
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.join(a, b).is_none() || self.meet(a, b).is_none() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Hasse diagram edges `(a, b)` with `a` covered by `b`.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b && self.leq(a, b) && count(&and(&self.up[a], &self.down[b])) == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// First triple violating meet or join semidistributivity; the poset
    /// must be a lattice.
    pub fn semidistributivity_violation(&self) -> Option<(usize, usize, usize)> {
        let m = |a, b| self.meet(a, b).expect("lattice");
        let j = |a, b| self.join(a, b).expect("lattice");
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    if m(x, y) == m(x, z) && m(x, j(y, z)) != m(x, y) {
                        return Some((x, y, z));
                    }
                    if j(x, y) == j(x, z) && j(x, m(y, z)) != j(x, y) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub scans: Vec<CheckResult>,
    /// Number of elements of `W_c^+` whose concordancy poset was examined.
    pub posets_examined: usize,
    pub ncb_cover_count: usize,
}

impl ConjectureReport {
    pub fn all_pass(&self) -> bool {
        self.scans.iter().all(|s| s.passed)
    }
}

/// Runs the lattice, semidistributivity, regularity and adjacency scans.
pub fn conjecture_scan(
    ctx: &Context,
    tri: &Triangulation,
    cap: usize,
) -> Result<ConjectureReport, SbdwError> {
    let w = ctx.w;
    check_cap(w, cap)?;
    let r = w.rank();
    let name = |x: Element| w.word_string(x);

    let ncb = ncb_order(ctx, tri);
    let rel: Vec<(usize, usize)> = ncb.covers.iter().map(|&(a, b, _)| (a.index(), b.index())).collect();
    let poset = Poset::from_relations(w.order(), &rel);
    let witness = poset
        .lattice_violation()
        .map(|(a, b)| format!("{} and {} lack a meet or join", name(Element(a as u32)), name(Element(b as u32))));
    let mut scans = vec![CheckResult {
        name: "ncb_is_lattice".into(),
        passed: witness.is_none(),
        witness,
    }];

    let mut lattice_w = None;
    let mut sd_w = None;
    let mut regular_w = None;
    let mut adjacency_w = None;
    let cell_index: BTreeMap<usize, (Element, u128)> = tri
        .cells
        .iter()
        .enumerate()
        .map(|(k, c)| (k, (c.u, c.chain.reflection_set().0)))
        .collect();
    for &u in &ctx.w_plus {
        let classes = ctx.concordant_classes(u);
        let cones: Vec<Cone> = classes
            .iter()
            .map(|cl| Cone::of_reflections(&ctx.deltas, &cl.representative.reflections))
            .collect();
        let n = classes.len();
        let mut rel = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && cone_contains(&cones[a], &cones[b])? {
                    rel.push((a, b));
                }
            }
        }
        let p = Poset::from_relations(n, &rel);
        let label = |k: usize| format!("{:?}", super::chain_names(w, &classes[k].representative));
        if let Some((a, b)) = p.lattice_violation() {
            lattice_w.get_or_insert_with(|| format!("u={}: {} and {}", name(u), label(a), label(b)));
            continue;
        }
        if let Some((x, y, z)) = p.semidistributivity_violation() {
            sd_w.get_or_insert_with(|| {
                format!("u={}: {}, {}, {}", name(u), label(x), label(y), label(z))
            });
        }
        let hasse = p.hasse();
        let mut degree = vec![0usize; n];
        for &(a, b) in &hasse {
            degree[a] += 1;
            degree[b] += 1;
        }
        if let Some(k) = (0..n).find(|&k| degree[k] != r - 1) {
            regular_w.get_or_insert_with(|| {
                format!("u={}: class {} has Hasse degree {}", name(u), label(k), degree[k])
            });
        }
        let class_of: BTreeMap<u128, usize> =
            classes.iter().enumerate().map(|(k, c)| (c.reflections.0, k)).collect();
        let mut shared: BTreeSet<(usize, usize)> = BTreeSet::new();
        for f in &tri.interior {
            let (ua, sa) = cell_index[&f.cells[0]];
            let (ub, sb) = cell_index[&f.cells[1]];
            if ua == u && ub == u && sa != sb {
                let (a, b) = (class_of[&sa], class_of[&sb]);
                shared.insert((a.min(b), a.max(b)));
            }
        }
        let adjacent: BTreeSet<(usize, usize)> = hasse.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        if adjacent != shared {
            adjacency_w.get_or_insert_with(|| {
                format!(
                    "u={}: Hasse edges {:?}, shared-facet pairs {:?}",
                    name(u),
                    adjacent,
                    shared
                )
            });
        }
    }
    for (n, wit) in [
        ("concordancy_posets_are_lattices", lattice_w),
        ("concordancy_posets_are_semidistributive", sd_w),
        ("concordancy_hasse_is_regular", regular_w),
        ("hasse_adjacency_iff_shared_facet", adjacency_w),
    ] {
        scans.push(CheckResult {
            name: n.into(),
            passed: wit.is_none(),
            witness: wit,
        });
    }
    Ok(ConjectureReport {
        scans,
        posets_examined: ctx.w_plus.len(),
        ncb_cover_count: ncb.covers.len(),
    })
}
