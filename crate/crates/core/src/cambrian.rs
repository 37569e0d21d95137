//! Coxeter-sorting words, sortable elements, the Cambrian projection,
//! the set `W_c^+`, and the skip construction of decreasing chains.

use thiserror::Error;

use crate::absolute::TChain;
use crate::coxeter::{CoxeterElement, CoxeterSystem, Element, Side};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CambrianError {
    #[error("{0} is not in W_c^+")]
    NotPositive(String),
    #[error("the inverse of {0} is not c^-1-sortable")]
    NotSortable(String),
}

/// The lexicographically first subword of `c^∞` spelling an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortingWord {
    pub letters: Vec<usize>,
    /// 1-based copy of `c` each letter was taken from.
    pub copy_index: Vec<usize>,
    /// Position of each letter inside its copy of `c`.
    pub slot: Vec<usize>,
}

impl SortingWord {
    /// Generator masks `I^(1), I^(2), ...` of the letters used in each copy.
    pub fn copy_sets(&self) -> Vec<u32> {
        let copies = self.copy_index.last().copied().unwrap_or(0);
        let mut sets = vec![0u32; copies];
        for (&l, &k) in self.letters.iter().zip(&self.copy_index) {
            sets[k - 1] |= 1 << l;
        }
        sets
    }

    pub fn is_nested(&self) -> bool {
        self.copy_sets().windows(2).all(|p| p[1] & !p[0] == 0)
    }
}

/// Greedy extraction of the `c`-sorting word of `x` from `c_word^∞`.
pub fn sorting_word(w: &CoxeterSystem, x: Element, c_word: &[usize]) -> SortingWord {
    let mut out = SortingWord {
        letters: Vec::new(),
        copy_index: Vec::new(),
        slot: Vec::new(),
    };
    let mut rest = x;
    let mut copy = 0;
    while rest != Element::IDENTITY {
        copy += 1;
        for (slot, &s) in c_word.iter().enumerate() {
            if w.is_left_descent(rest, s) {
                rest = w.simple_mul(s, rest);
                out.letters.push(s);
                out.copy_index.push(copy);
                out.slot.push(slot);
            }
        }
    }
    out
}

pub fn is_sortable(w: &CoxeterSystem, x: Element, c_word: &[usize]) -> bool {
    sorting_word(w, x, c_word).is_nested()
}

/// Sortability flags for every element, indexed by element id.
pub fn sortable_table(w: &CoxeterSystem, c_word: &[usize]) -> Vec<bool> {
    w.elements().map(|x| is_sortable(w, x, c_word)).collect()
}

/// `pi_down` for every element: the maximum `c`-sortable element below it in
/// right weak order. Built bottom-up over right weak covers.
pub fn pi_down_table(w: &CoxeterSystem, c_word: &[usize]) -> Vec<Element> {
    let sortable = sortable_table(w, c_word);
    let mut order: Vec<Element> = w.elements().collect();
    order.sort_by_key(|&x| (w.length(x), x));
    let mut table = vec![Element::IDENTITY; w.order()];
    for x in order {
        if sortable[x.index()] {
            table[x.index()] = x;
            continue;
        }
        table[x.index()] = w
            .right_descents(x)
            .into_iter()
            .map(|s| table[w.mul_simple(x, s).index()])
            .max_by_key(|&v| (w.length(v), std::cmp::Reverse(v)))
            .expect("non-identity element has a descent");
    }
    table
}

pub fn pi_down(w: &CoxeterSystem, x: Element, c_word: &[usize]) -> Element {
    pi_down_table(w, c_word)[x.index()]
}

/// Antisortable elements are the right weak order maxima of Cambrian classes.
pub fn antisortable_table(w: &CoxeterSystem, c_word: &[usize]) -> Vec<bool> {
    let pd = pi_down_table(w, c_word);
    w.elements()
        .map(|x| {
            (0..w.rank()).all(|s| {
                let y = w.mul_simple(x, s);
                w.length(y) < w.length(x) || pd[y.index()] != pd[x.index()]
            })
        })
        .collect()
}

/// `{u : l(uc) = l(u) + r}`, sorted by (length, id).
pub fn w_c_plus(w: &CoxeterSystem, c: &CoxeterElement) -> Vec<Element> {
    let r = w.rank();
    let mut out: Vec<Element> = w
        .elements()
        .filter(|&u| w.length(w.mul(u, c.element)) == w.length(u) + r)
        .collect();
    out.sort_by_key(|&u| (w.length(u), u));
    out
}

/// The lower left weak interval below `w0 c^-1`, which equals `W_c^+`.
pub fn w_c_plus_by_weak_order(w: &CoxeterSystem, c: &CoxeterElement) -> Vec<Element> {
    let top = w.mul(w.longest_element(), w.inverse(c.element));
    let mut out: Vec<Element> = w
        .elements()
        .filter(|&u| w.weak_leq(u, top, Side::Left))
        .collect();
    out.sort_by_key(|&u| (w.length(u), u));
    out
}

/// `{u in W_c^+ : u^-1 is c^-1-sortable}`.
pub fn sortable_positive(w: &CoxeterSystem, c: &CoxeterElement) -> Vec<Element> {
    let cinv: Vec<usize> = c.word.iter().rev().copied().collect();
    w_c_plus(w, c)
        .into_iter()
        .filter(|&u| is_sortable(w, w.inverse(u), &cinv))
        .collect()
}

/// The skip construction: reads the `c^-1`-sorting word of `u^-1` inside
/// `(s_r ... s_1)^∞` and turns the first unused copy of each letter into a
/// reflection conjugated by the product of used letters and earlier skips.
pub fn decreasing_class_via_skips(
    w: &CoxeterSystem,
    u: Element,
    c: &CoxeterElement,
) -> Result<TChain, CambrianError> {
    let r = w.rank();
    if w.length(w.mul(u, c.element)) != w.length(u) + r {
        return Err(CambrianError::NotPositive(w.word_string(u)));
    }
    let cinv: Vec<usize> = c.word.iter().rev().copied().collect();
    let sw = sorting_word(w, w.inverse(u), &cinv);
    if !sw.is_nested() {
        return Err(CambrianError::NotSortable(w.word_string(u)));
    }
    let used: std::collections::HashSet<(usize, usize)> = sw
        .copy_index
        .iter()
        .zip(&sw.slot)
        .map(|(&k, &p)| (k, p))
        .collect();
    let mut skipped = vec![false; r];
    let mut q = Element::IDENTITY;
    let mut chain = Vec::with_capacity(r);
    let mut copy = 0;
    while chain.len() < r {
        copy += 1;
        for (slot, &s) in cinv.iter().enumerate() {
            if used.contains(&(copy, slot)) {
                q = w.mul_simple(q, s);
            } else if !skipped[s] {
                skipped[s] = true;
                let t = w.conjugate(q, w.simple(s));
                chain.push(w.reflection_of(t).expect("conjugate of a simple reflection"));
                q = w.mul_simple(q, s);
                if chain.len() == r {
                    break;
                }
            }
        }
    }
    Ok(TChain::new(chain))
}
