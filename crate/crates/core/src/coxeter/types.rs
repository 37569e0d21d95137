//! Type labels, Coxeter matrices in Bourbaki numbering, and classification
//! of irreducible components with their degrees.

use std::fmt;

use super::CoxeterError;

/// An irreducible finite Coxeter type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IrreducibleType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
    H3,
    H4,
    I2(u32),
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleType::A(n) => write!(f, "A{n}"),
            IrreducibleType::B(n) => write!(f, "B{n}"),
            IrreducibleType::C(n) => write!(f, "C{n}"),
            IrreducibleType::D(n) => write!(f, "D{n}"),
            IrreducibleType::E(n) => write!(f, "E{n}"),
            IrreducibleType::F4 => write!(f, "F4"),
            IrreducibleType::G2 => write!(f, "G2"),
            IrreducibleType::H3 => write!(f, "H3"),
            IrreducibleType::H4 => write!(f, "H4"),
            IrreducibleType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl IrreducibleType {
    pub fn rank(&self) -> usize {
        match *self {
            IrreducibleType::A(n)
            | IrreducibleType::B(n)
            | IrreducibleType::C(n)
            | IrreducibleType::D(n)
            | IrreducibleType::E(n) => n,
            IrreducibleType::F4 | IrreducibleType::H4 => 4,
            IrreducibleType::H3 => 3,
            IrreducibleType::G2 | IrreducibleType::I2(_) => 2,
        }
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d = match *self {
            IrreducibleType::A(n) => (2..=n as u32 + 1).collect(),
            IrreducibleType::B(n) | IrreducibleType::C(n) => (1..=n as u32).map(|k| 2 * k).collect(),
            IrreducibleType::D(n) => {
                let mut v: Vec<u32> = (1..n as u32).map(|k| 2 * k).collect();
                v.push(n as u32);
                v
            }
            IrreducibleType::E(6) => vec![2, 5, 6, 8, 9, 12],
            IrreducibleType::E(7) => vec![2, 6, 8, 10, 12, 14, 18],
            IrreducibleType::E(_) => vec![2, 8, 12, 14, 18, 20, 24, 30],
            IrreducibleType::F4 => vec![2, 6, 8, 12],
            IrreducibleType::G2 => vec![2, 6],
            IrreducibleType::H3 => vec![2, 6, 10],
            IrreducibleType::H4 => vec![2, 12, 20, 30],
            IrreducibleType::I2(m) => vec![2, m],
        };
        d.sort_unstable();
        d
    }

    pub fn coxeter_number(&self) -> u32 {
        *self.degrees().iter().max().unwrap()
    }

    /// Coxeter matrix in Bourbaki numbering (0-based indices).
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut set = |i: usize, j: usize, v: u32| {
            m[i][j] = v;
            m[j][i] = v;
        };
        match *self {
            IrreducibleType::A(n) => (0..n.saturating_sub(1)).for_each(|i| set(i, i + 1, 3)),
            IrreducibleType::B(n) | IrreducibleType::C(n) => {
                (0..n - 1).for_each(|i| set(i, i + 1, 3));
                set(n - 2, n - 1, 4);
            }
            IrreducibleType::D(n) => {
                (0..n - 2).for_each(|i| set(i, i + 1, 3));
                set(n - 3, n - 1, 3);
            }
            IrreducibleType::E(n) => {
                set(0, 2, 3);
                set(1, 3, 3);
                (2..n - 1).for_each(|i| set(i, i + 1, 3));
            }
            IrreducibleType::F4 => {
                set(0, 1, 3);
                set(1, 2, 4);
                set(2, 3, 3);
            }
            IrreducibleType::G2 => set(0, 1, 6),
            IrreducibleType::H3 => {
                set(0, 1, 5);
                set(1, 2, 3);
            }
            IrreducibleType::H4 => {
                set(0, 1, 5);
                set(1, 2, 3);
                set(2, 3, 3);
            }
            IrreducibleType::I2(k) => set(0, 1, k),
        }
        m
    }

    /// Relative squared root lengths for crystallographic types (Bourbaki).
    pub fn root_lengths(&self) -> Option<Vec<u32>> {
        match *self {
            IrreducibleType::A(n) | IrreducibleType::D(n) | IrreducibleType::E(n) => Some(vec![1; n]),
            IrreducibleType::B(n) => {
                let mut v = vec![2; n];
                v[n - 1] = 1;
                Some(v)
            }
            IrreducibleType::C(n) => {
                let mut v = vec![1; n];
                v[n - 1] = 2;
                Some(v)
            }
            IrreducibleType::F4 => Some(vec![2, 2, 1, 1]),
            IrreducibleType::G2 => Some(vec![1, 3]),
            IrreducibleType::I2(3) => Some(vec![1, 1]),
            IrreducibleType::I2(4) => Some(vec![2, 1]),
            IrreducibleType::I2(6) => Some(vec![1, 3]),
            _ => None,
        }
    }

    fn validate(&self) -> Result<(), CoxeterError> {
        let ok = match *self {
            IrreducibleType::A(n) => n >= 1,
            IrreducibleType::B(n) | IrreducibleType::C(n) => n >= 2,
            IrreducibleType::D(n) => n >= 4,
            IrreducibleType::E(n) => (6..=8).contains(&n),
            IrreducibleType::I2(m) => m >= 3,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(CoxeterError::InvalidInput(format!("unsupported type {self}")))
        }
    }
}

/// Parses labels such as `A3`, `B2`, `I2(7)`, `H3`, or products `A1xA2`.
pub fn parse_label(label: &str) -> Result<Vec<IrreducibleType>, CoxeterError> {
    let bad = || CoxeterError::InvalidInput(format!("unknown type label '{label}'"));
    let mut out = Vec::new();
    for part in label.split(['x', '×', '*']) {
        let part = part.trim();
        if part.is_empty() {
            return Err(bad());
        }
        let (head, rest) = part.split_at(1);
        let head = head.to_ascii_uppercase();
        let t = if head == "I" {
            let inner = rest
                .strip_prefix("2(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(bad)?;
            IrreducibleType::I2(inner.parse().map_err(|_| bad())?)
        } else {
            let n: usize = rest.parse().map_err(|_| bad())?;
            match (head.as_str(), n) {
                ("A", n) => IrreducibleType::A(n),
                ("B", n) => IrreducibleType::B(n),
                ("C", n) => IrreducibleType::C(n),
                ("D", n) => IrreducibleType::D(n),
                ("E", n) => IrreducibleType::E(n),
                ("F", 4) => IrreducibleType::F4,
                ("G", 2) => IrreducibleType::G2,
                ("H", 3) => IrreducibleType::H3,
                ("H", 4) => IrreducibleType::H4,
                _ => return Err(bad()),
            }
        };
        t.validate()?;
        out.push(t);
    }
    Ok(out)
}

/// Block-diagonal Coxeter matrix of a product of irreducible types.
pub fn product_matrix(types: &[IrreducibleType]) -> Vec<Vec<u32>> {
    let n: usize = types.iter().map(|t| t.rank()).sum();
    let mut m = vec![vec![2u32; n]; n];
    let mut off = 0;
    for t in types {
        let b = t.coxeter_matrix();
        for i in 0..b.len() {
            for j in 0..b.len() {
                m[off + i][off + j] = b[i][j];
            }
        }
        off += b.len();
    }
    m
}

/// Connected components of the Coxeter graph, each sorted.
pub fn components(matrix: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let n = matrix.len();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && matrix[i][j] != 2 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Identifies a connected Coxeter graph (restricted to `nodes`) as a finite type.
pub fn classify(matrix: &[Vec<u32>], nodes: &[usize]) -> Option<IrreducibleType> {
    let n = nodes.len();
    let edge = |a: usize, b: usize| matrix[nodes[a]][nodes[b]];
    if n == 1 {
        return Some(IrreducibleType::A(1));
    }
    if n == 2 {
        return Some(match edge(0, 1) {
            3 => IrreducibleType::A(2),
            4 => IrreducibleType::B(2),
            6 => IrreducibleType::G2,
            m => IrreducibleType::I2(m),
        });
    }
    let mut edges = Vec::new();
    let mut deg = vec![0usize; n];
    for a in 0..n {
        for b in a + 1..n {
            let m = edge(a, b);
            if !(2..=5).contains(&m) {
                return None;
            }
            if m != 2 {
                edges.push((a, b, m));
                deg[a] += 1;
                deg[b] += 1;
            }
        }
    }
    if edges.len() != n - 1 {
        return None;
    }
    let big: Vec<&(usize, usize, u32)> = edges.iter().filter(|e| e.2 > 3).collect();
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    if deg.iter().any(|&d| d > 3) || branch.len() > 1 {
        return None;
    }
    if let Some(&b) = branch.first() {
        if !big.is_empty() {
            return None;
        }
        let mut arms: Vec<usize> = edges
            .iter()
            .filter_map(|&(x, y, _)| {
                if x == b {
                    Some(y)
                } else if y == b {
                    Some(x)
                } else {
                    None
                }
            })
            .map(|start| {
                let mut len = 1;
                let (mut prev, mut cur) = (b, start);
                loop {
                    let next = edges.iter().find_map(|&(x, y, _)| {
                        if x == cur && y != prev {
                            Some(y)
                        } else if y == cur && x != prev {
                            Some(x)
                        } else {
                            None
                        }
                    });
                    match next {
                        Some(nx) => {
                            prev = cur;
                            cur = nx;
                            len += 1;
                        }
                        None => break len,
                    }
                }
            })
            .collect();
        arms.sort_unstable();
        return match arms.as_slice() {
            [1, 1, _] => Some(IrreducibleType::D(n)),
            [1, 2, 2] => Some(IrreducibleType::E(6)),
            [1, 2, 3] => Some(IrreducibleType::E(7)),
            [1, 2, 4] => Some(IrreducibleType::E(8)),
            _ => None,
        };
    }
    match big.as_slice() {
        [] => Some(IrreducibleType::A(n)),
        [&(a, b, m)] => {
            let at_end = deg[a] == 1 || deg[b] == 1;
            match (m, n, at_end) {
                (4, _, true) => Some(IrreducibleType::B(n)),
                (4, 4, false) => Some(IrreducibleType::F4),
                (5, 3, true) => Some(IrreducibleType::H3),
                (5, 4, true) => Some(IrreducibleType::H4),
                _ => None,
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_labels() {
        assert_eq!(parse_label("A3").unwrap(), vec![IrreducibleType::A(3)]);
        assert_eq!(parse_label("I2(7)").unwrap(), vec![IrreducibleType::I2(7)]);
        assert_eq!(
            parse_label("A1xA2").unwrap(),
            vec![IrreducibleType::A(1), IrreducibleType::A(2)]
        );
        assert!(parse_label("Q3").is_err());
        assert!(parse_label("D3").is_err());
        assert!(parse_label("E9").is_err());
        assert!(parse_label("F5").is_err());
    }

    #[test]
    fn classification_round_trips() {
        for t in [
            IrreducibleType::A(4),
            IrreducibleType::B(3),
            IrreducibleType::D(5),
            IrreducibleType::E(6),
            IrreducibleType::E(7),
            IrreducibleType::E(8),
            IrreducibleType::F4,
            IrreducibleType::G2,
            IrreducibleType::H3,
            IrreducibleType::H4,
            IrreducibleType::I2(5),
        ] {
            let m = t.coxeter_matrix();
            let nodes: Vec<usize> = (0..m.len()).collect();
            assert_eq!(classify(&m, &nodes), Some(t), "{t}");
        }
    }

    #[test]
    fn degree_tables_are_consistent() {
        for t in parse_label("A1xA3xB4xD4xD5xE6xE7xE8xF4xG2xH3xH4xI2(9)").unwrap() {
            let d = t.degrees();
            assert_eq!(d.len(), t.rank());
            let n: u32 = d.iter().map(|x| x - 1).sum();
            assert_eq!(2 * n, t.rank() as u32 * t.coxeter_number(), "{t}");
        }
    }
}
