//! The example compactifications: `CP^n`, `CP^r × CP^{n−r}`, the Hirzebruch
//! surface `F_1`, and the non-Fano `F_2` used as a negative control.

use super::{FanError, FanSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinFan {
    Cpn { n: usize },
    CpProduct { n: usize, r: usize },
    HirzebruchF1,
    F2NonFano,
}

impl BuiltinFan {
    /// Looks up a builtin by name (`cpn`, `cp_product`, `hirzebruch_f1`,
    /// `f2_nonfano`) with integer parameters (`[n]`, `[n, r]`, `[]`, `[]`).
    pub fn from_name(name: &str, params: &[usize]) -> Result<Self, FanError> {
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(FanError::BadParams(format!(
                    "`{name}` takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        match name {
            "cpn" => arity(1).map(|_| BuiltinFan::Cpn { n: params[0] }),
            "cp_product" => arity(2).map(|_| BuiltinFan::CpProduct {
                n: params[0],
                r: params[1],
            }),
            "hirzebruch_f1" => arity(0).map(|_| BuiltinFan::HirzebruchF1),
            "f2_nonfano" => arity(0).map(|_| BuiltinFan::F2NonFano),
            other => Err(FanError::UnknownName(other.to_string())),
        }
    }
}

/// All `k`-subsets of `items` obtained by dropping one element, in
/// lexicographic order.
fn drop_one(items: &[usize]) -> Vec<Vec<usize>> {
    (0..items.len())
        .rev()
        .map(|skip| {
            items
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

pub fn builtin_fan(which: &BuiltinFan) -> Result<FanSpec, FanError> {
    match *which {
        BuiltinFan::Cpn { n } => {
            if n == 0 {
                return Err(FanError::BadParams("cpn needs n >= 1".into()));
            }
            let all: Vec<usize> = (0..=n).collect();
            FanSpec::new(n, vec![vec![1; n]], Some(drop_one(&all)))
        }
        BuiltinFan::CpProduct { n, r } => {
            if r == 0 || r >= n {
                return Err(FanError::BadParams(format!(
                    "cp_product needs 1 <= r < n, got n = {n}, r = {r}"
                )));
            }
            let v1: Vec<i64> = (0..n).map(|i| i64::from(i < r)).collect();
            let v2: Vec<i64> = (0..n).map(|i| i64::from(i >= r)).collect();
            let first: Vec<usize> = (0..r).chain([n]).collect();
            let second: Vec<usize> = (r..n).chain([n + 1]).collect();
            let mut cones = Vec::new();
            for a in drop_one(&first) {
                for b in drop_one(&second) {
                    let mut c: Vec<usize> = a.iter().chain(&b).copied().collect();
                    c.sort_unstable();
                    cones.push(c);
                }
            }
            FanSpec::new(n, vec![v1, v2], Some(cones))
        }
        BuiltinFan::HirzebruchF1 => FanSpec::new(
            2,
            vec![vec![1, 1], vec![0, 1]],
            Some(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]),
        ),
        BuiltinFan::F2NonFano => FanSpec::new(
            2,
            vec![vec![0, 1], vec![1, 2]],
            Some(vec![vec![0, 1], vec![1, 3], vec![2, 3], vec![0, 2]]),
        ),
    }
}
