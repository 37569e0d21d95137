//! Exhaustive checks of the structural theorems about concordant pairs.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::{bruhat_interval, check_cap, chain_names, Context, SbdwError};
use crate::absolute::{cat_plus, CommClass, TChain};
use crate::cambrian::{decreasing_class_via_skips, pi_down_table, sortable_table};
use crate::coxeter::{CoxeterSystem, Element, Side, TSet};
use crate::geometry::{cone_contains, Cone};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// First counterexample found, if any.
    pub witness: Option<String>,
}

impl CheckResult {
    fn new(name: &str, witness: Option<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        }
    }
}

/// Lower and upper ends of the left weak interval of `u` concordant with a chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakInterval {
    pub chain: Vec<String>,
    pub low: String,
    pub high: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub checks: Vec<CheckResult>,
    pub class_count: usize,
    pub cat_plus: u64,
    pub sortable_inverse_count: usize,
    pub intervals: Vec<WeakInterval>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `[u, uc]` translated to start at the identity, with its covers.
fn normalized_interval(w: &CoxeterSystem, u: Element, top: Element) -> (Vec<Element>, Vec<(Element, Element)>) {
    let uinv = w.inverse(u);
    let elems = bruhat_interval(w, u, top);
    let set: HashSet<Element> = elems.iter().copied().collect();
    let mut nodes: Vec<Element> = elems.iter().map(|&x| w.mul(uinv, x)).collect();
    nodes.sort();
    let mut covers: Vec<(Element, Element)> = elems
        .iter()
        .flat_map(|&x| {
            w.bruhat_covers(x)
                .iter()
                .filter(|y| set.contains(y))
                .map(move |&y| (x, y))
                .collect::<Vec<_>>()
        })
        .map(|(x, y)| (w.mul(uinv, x), w.mul(uinv, y)))
        .collect();
    covers.sort();
    (nodes, covers)
}

fn class_sets(classes: &[CommClass]) -> BTreeSet<u128> {
    classes.iter().map(|c| c.reflections.0).collect()
}

/// Runs the six checks; refuses groups above `cap`.
pub fn theorem_suite(ctx: &Context, cap: usize) -> Result<TheoremReport, SbdwError> {
    let w = ctx.w;
    check_cap(w, cap)?;
    let name = |x: Element| w.word_string(x);
    let pd = pi_down_table(w, &ctx.c_inv_word);
    let classes: HashMap<Element, Vec<CommClass>> = ctx
        .w_plus
        .iter()
        .map(|&u| (u, ctx.concordant_classes(u)))
        .collect();
    let decreasing = |u: Element| -> Vec<TSet> {
        classes[&u]
            .iter()
            .filter(|c| c.decreasing)
            .map(|c| c.reflections)
            .collect()
    };
    let intervals: HashMap<Element, _> = ctx
        .w_plus
        .iter()
        .map(|&u| (u, normalized_interval(w, u, w.mul(u, ctx.c.element))))
        .collect();

    let mut checks = Vec::new();

    let mut witness = None;
    'pairs: for (i, &u1) in ctx.w_plus.iter().enumerate() {
        for &u2 in &ctx.w_plus[i..] {
            let same_dec = decreasing(u1) == decreasing(u2);
            let same_class = class_sets(&classes[&u1]) == class_sets(&classes[&u2]);
            let iso = intervals[&u1] == intervals[&u2];
            let cambrian = pd[w.inverse(u1).index()] == pd[w.inverse(u2).index()];
            if !(same_dec == same_class && same_class == iso && iso == cambrian) {
                witness = Some(format!(
                    "u1={}, u2={}: decreasing {same_dec}, classes {same_class}, isomorphic {iso}, cambrian {cambrian}",
                    name(u1),
                    name(u2)
                ));
                break 'pairs;
            }
        }
    }
    checks.push(CheckResult::new("cambrian_equivalence", witness));

    let concordant: HashSet<(Element, &TChain)> =
        ctx.omega.iter().map(|p| (p.u, &p.chain)).collect();
    let chain_cones: Vec<Cone> = ctx
        .chains
        .iter()
        .map(|ch| Cone::of_reflections(&ctx.deltas, &ch.reflections))
        .collect();
    let mut witness = None;
    'outer: for &u in &ctx.w_plus {
        let chamber = Cone::chamber(w, u);
        for (ch, cone) in ctx.chains.iter().zip(&chain_cones) {
            let inside = cone_contains(&chamber, cone)?;
            if inside != concordant.contains(&(u, ch)) {
                witness = Some(format!(
                    "u={}, chain {:?}: cone containment {inside}",
                    name(u),
                    chain_names(w, ch)
                ));
                break 'outer;
            }
        }
    }
    checks.push(CheckResult::new("concordance_iff_cone_containment", witness));

    let mut witness = None;
    let mut lows = Vec::with_capacity(ctx.chains.len());
    let mut weak_intervals = Vec::with_capacity(ctx.chains.len());
    for ch in &ctx.chains {
        let ys: Vec<Element> = ctx
            .w_plus
            .iter()
            .copied()
            .filter(|&u| concordant.contains(&(u, ch)))
            .collect();
        let low = ys.iter().copied().find(|&a| ys.iter().all(|&b| w.weak_leq(a, b, Side::Left)));
        let high = ys.iter().copied().find(|&a| ys.iter().all(|&b| w.weak_leq(b, a, Side::Left)));
        let (Some(low), Some(high)) = (low, high) else {
            witness.get_or_insert_with(|| {
                format!("chain {:?} has no concordant minimum or maximum", chain_names(w, ch))
            });
            lows.push(None);
            continue;
        };
        let full: Vec<Element> = w
            .elements()
            .filter(|&x| w.weak_leq(low, x, Side::Left) && w.weak_leq(x, high, Side::Left))
            .collect();
        if full.len() != ys.len() || !full.iter().all(|x| ys.contains(x)) {
            witness.get_or_insert_with(|| {
                format!("chain {:?}: concordant set is not a weak interval", chain_names(w, ch))
            });
        }
        lows.push(Some(low));
        weak_intervals.push(WeakInterval {
            chain: chain_names(w, ch),
            low: name(low),
            high: name(high),
        });
    }
    checks.push(CheckResult::new("concordant_sets_are_weak_intervals", witness));

    let sortable = sortable_table(w, &ctx.c_inv_word);
    let expected: BTreeSet<Element> = w
        .elements()
        .filter(|&x| sortable[w.inverse(x).index()])
        .collect();
    let mut reached = BTreeSet::new();
    for (ch, low) in ctx.chains.iter().zip(&lows) {
        if let Some(low) = low {
            for p in ch.prefixes(w) {
                reached.insert(w.mul(*low, p));
            }
        }
    }
    let witness = (reached != expected).then(|| {
        let extra: Vec<String> = reached.difference(&expected).map(|&x| name(x)).collect();
        let missing: Vec<String> = expected.difference(&reached).map(|&x| name(x)).collect();
        format!("extra {extra:?}, missing {missing:?}")
    });
    checks.push(CheckResult::new("lowest_vertices_are_sortable_inverses", witness));

    let distinct: BTreeSet<BTreeSet<u128>> =
        classes.values().map(|cl| class_sets(cl)).collect();
    let catalan = cat_plus(w);
    let witness = (distinct.len() as u64 != catalan)
        .then(|| format!("{} distinct class sets, expected {catalan}", distinct.len()));
    checks.push(CheckResult::new("class_sets_count_cat_plus", witness));

    let increasing: TSet = (0..w.rank()).map(|i| crate::coxeter::Reflection(i as u16)).collect();
    let mut witness = None;
    for &u in &ctx.w_plus {
        let dec = decreasing(u);
        let has_inc = classes[&u].iter().any(|c| c.increasing && c.reflections == increasing);
        if dec.len() != 1 || !has_inc {
            witness = Some(format!(
                "u={}: {} decreasing classes, increasing class present {has_inc}",
                name(u),
                dec.len()
            ));
            break;
        }
        let rep = w.inverse(pd[w.inverse(u).index()]);
        let skip = decreasing_class_via_skips(w, rep, &ctx.c)?;
        let ok = skip.reflection_set() == dec[0]
            && ctx.heap.is_decreasing(&skip)
            && concordant.contains(&(rep, &skip));
        if !ok {
            witness = Some(format!(
                "u={}: skip chain {:?} from {} is not its decreasing class",
                name(u),
                chain_names(w, &skip),
                name(rep)
            ));
            break;
        }
    }
    checks.push(CheckResult::new("unique_decreasing_class_via_skips", witness));

    Ok(TheoremReport {
        checks,
        class_count: distinct.len(),
        cat_plus: catalan,
        sortable_inverse_count: expected.len(),
        intervals: weak_intervals,
    })
}
