//! Translation between type-A elements and permutations of `{1, ..., n}`.
//!
//! Products compose as functions, right to left, and `s_i = (i i+1)`, so
//! `s1s2s3 = (1 2 3 4)` in `A3`.

use super::{CoxeterError, CoxeterSystem, Element};

fn check_type_a(w: &CoxeterSystem) -> Result<usize, CoxeterError> {
    let r = w.rank();
    let path = (0..r).all(|i| {
        (0..r).all(|j| {
            let m = w.coxeter_matrix()[i][j];
            match i.abs_diff(j) {
                0 => m == 1,
                1 => m == 3,
                _ => m == 2,
            }
        })
    });
    if path {
        Ok(r + 1)
    } else {
        Err(CoxeterError::InvalidInput(format!(
            "{} is not of type A with path numbering",
            w.label()
        )))
    }
}

/// One-line notation `[w(1), ..., w(n)]` (1-based values).
pub fn to_permutation(w: &CoxeterSystem, x: Element) -> Result<Vec<usize>, CoxeterError> {
    let n = check_type_a(w)?;
    let mut p: Vec<usize> = (1..=n).collect();
    // x = s_{a1} ... s_{am}; apply s_{am} first, so right-multiplying swaps positions.
    for &i in &w.reduced_word(x) {
        p.swap(i, i + 1);
    }
    Ok(p)
}

/// Element with the given one-line notation.
pub fn from_permutation(w: &CoxeterSystem, p: &[usize]) -> Result<Element, CoxeterError> {
    let n = check_type_a(w)?;
    let mut sorted = p.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=n).collect::<Vec<_>>() {
        return Err(CoxeterError::InvalidInput("not a permutation of 1..n".into()));
    }
    let mut q = p.to_vec();
    let mut word = Vec::new();
    while let Some(i) = (0..n - 1).find(|&i| q[i] > q[i + 1]) {
        q.swap(i, i + 1);
        word.push(i);
    }
    word.reverse();
    w.element_of_word(&word)
}

/// Parses cycle notation such as `(2 4 5)`, `(15)(34)`, or `e`.
pub fn from_cycles(w: &CoxeterSystem, text: &str) -> Result<Element, CoxeterError> {
    let n = check_type_a(w)?;
    let bad = || CoxeterError::InvalidInput(format!("malformed cycle notation '{text}'"));
    let mut p: Vec<usize> = (1..=n).collect();
    let t = text.trim();
    if t == "e" || t.is_empty() {
        return from_permutation(w, &p);
    }
    let mut cycles = Vec::new();
    for chunk in t.split(')') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let inner = chunk.strip_prefix('(').ok_or_else(bad)?;
        let items: Vec<usize> = if inner.contains([' ', ',']) {
            inner
                .split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            inner
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        if items.iter().any(|&k| k == 0 || k > n) {
            return Err(bad());
        }
        cycles.push(items);
    }
    // Rightmost cycle acts first.
    for cyc in cycles.iter().rev() {
        let mut map: Vec<usize> = (0..=n).collect();
        for k in 0..cyc.len() {
            map[cyc[k]] = cyc[(k + 1) % cyc.len()];
        }
        for v in p.iter_mut() {
            *v = map[*v];
        }
    }
    from_permutation(w, &p)
}

/// Cycle notation of an element, fixed points omitted; `e` for the identity.
pub fn to_cycles(w: &CoxeterSystem, x: Element) -> Result<String, CoxeterError> {
    let p = to_permutation(w, x)?;
    let n = p.len();
    let mut seen = vec![false; n + 1];
    let mut out = String::new();
    for start in 1..=n {
        if seen[start] || p[start - 1] == start {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut k = p[start - 1];
        while k != start {
            seen[k] = true;
            cyc.push(k);
            k = p[k - 1];
        }
        let body: Vec<String> = cyc.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    if out.is_empty() {
        out.push('e');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coxeter_element_is_long_cycle() {
        let w = CoxeterSystem::from_label("A3").unwrap();
        let c = w.element_of_word(&[0, 1, 2]).unwrap();
        assert_eq!(to_cycles(&w, c).unwrap(), "(1 2 3 4)");
        let prod = w.mul_all(&[
            from_cycles(&w, "(3 4)").unwrap(),
            from_cycles(&w, "(2 4)").unwrap(),
            from_cycles(&w, "(1 4)").unwrap(),
        ]);
        assert_eq!(prod, c);
    }

    #[test]
    fn round_trips() {
        let w = CoxeterSystem::from_label("A3").unwrap();
        for x in w.elements() {
            let p = to_permutation(&w, x).unwrap();
            assert_eq!(from_permutation(&w, &p).unwrap(), x);
            let cyc = to_cycles(&w, x).unwrap();
            assert_eq!(from_cycles(&w, &cyc).unwrap(), x);
        }
        let t13 = from_cycles(&w, "(13)").unwrap();
        assert_eq!(w.length(t13), 3);
        assert!(w.reflection_of(t13).is_some());
    }

    #[test]
    fn rejects_other_types() {
        let w = CoxeterSystem::from_label("B2").unwrap();
        assert!(to_permutation(&w, Element::IDENTITY).is_err());
    }
}
