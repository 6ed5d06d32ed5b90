//! Skew-symmetric quivers with frozen vertices.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    pub frozen: Vec<bool>,
    /// `b[i][j] > 0` counts arrows `i → j`.
    pub b: Vec<Vec<i64>>,
}

impl Quiver {
    pub fn new(frozen: Vec<bool>) -> Self {
        let n = frozen.len();
        Quiver {
            frozen,
            b: vec![vec![0; n]; n],
        }
    }

    pub fn len(&self) -> usize {
        self.frozen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frozen.is_empty()
    }

    pub fn add_arrows(&mut self, i: usize, j: usize, c: i64) {
        self.b[i][j] += c;
        self.b[j][i] -= c;
    }

    pub fn is_skew(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.b[i][j] == -self.b[j][i]))
    }

    pub fn mutable(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.frozen[i]).collect()
    }

    /// All `(i, j, count)` with `count > 0` arrows `i → j`.
    pub fn arrows(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.b[i][j] > 0 {
                    out.push((i, j, self.b[i][j]));
                }
            }
        }
        out
    }

    pub fn mutate(&self, k: usize) -> Quiver {
        assert!(!self.frozen[k], "mutation at a frozen vertex");
        let n = self.len();
        let mut b = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k {
                    b[i][j] = -self.b[i][j];
                } else {
                    let (x, y) = (self.b[i][k], self.b[k][j]);
                    b[i][j] = self.b[i][j] + (x.abs() * y + x * y.abs()) / 2;
                }
            }
        }
        Quiver {
            frozen: self.frozen.clone(),
            b,
        }
    }

    /// The quiver on `keep` (in that order).
    pub fn restrict(&self, keep: &[usize]) -> Quiver {
        let frozen = keep.iter().map(|&i| self.frozen[i]).collect();
        let b = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.b[i][j]).collect())
            .collect();
        Quiver { frozen, b }
    }

    pub fn to_dot(&self, labels: &[String]) -> String {
        let mut s = String::from("digraph Q {\n");
        for i in 0..self.len() {
            let shape = if self.frozen[i] { "box" } else { "circle" };
            s.push_str(&format!(
                "  v{} [label=\"{}\", shape={}];\n",
                i,
                labels.get(i).cloned().unwrap_or(i.to_string()),
                shape
            ));
        }
        for (i, j, c) in self.arrows() {
            for _ in 0..c {
                s.push_str(&format!("  v{} -> v{};\n", i, j));
            }
        }
        s.push_str("}\n");
        s
    }
}
