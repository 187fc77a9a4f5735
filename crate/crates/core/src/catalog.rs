//! Named graphs: finite and extended ADE diagrams plus the hyperbolic list.
//!
//! Names use `family:params`, e.g. `K:3`, `A_tilde:2`, `A_hyp:2,1`.
//!
//! | name            | graph                                                     |
//! |-----------------|-----------------------------------------------------------|
//! | `A:n`           | path `0 - 1 - … - (n-1)`                                  |
//! | `D:n` (n ≥ 4)   | path `0 … n-2`, vertex `n-1` on `n-3`                     |
//! | `E:n` (6,7,8)   | longest arm tip-first, then centre, then the other arms  |
//! | `A_tilde:1`     | two vertices, double edge                                 |
//! | `A_tilde:n`     | cycle `0 … n`                                             |
//! | `D_tilde:n`     | `0, 1` on `2`, path `2 … n-2`, `n-1, n` on `n-2`          |
//! | `E_tilde:n`     | arms (2,2,2), (3,3,1), (5,2,1); vertex 0 is the extension |
//! | `L:m`           | one vertex with `m` loops                                 |
//! | `K:m`           | two vertices joined by `m` edges                          |
//! | `K:m,1`/`K:m,2` | `K:m` with a loop on vertex 0 / on both vertices           |
//! | `A_hyp:n`       | `∞ = 0` joined to vertex 1 of `A_tilde:n` on `1 … n+1`   |
//! | `D_hyp:n`       | `∞ = 0` joined to vertex 1 of `D_tilde:n` on `1 … n+1`   |
//! | `E_hyp:n`       | `E_tilde:n` with `∞ = 0` prepended to the extended arm   |
//! | `A_hyp:1,1`     | path `∞=0 = 1 = 2` with both edges doubled               |
//! | `A_tilde:2,k`   | triangle with `k` doubled edges (`0-1`, then `1-2`, then `0-2`) |
//! | `A_hyp:2,1`     | `∞=0`, apex 1, base `2 - 3`; edges 0-1, 1-2, 1-3, 0-2, 2-3 |
//! | `A_hyp:2,2`     | complete graph on four vertices                           |
//! | `A_hyp:3,1`     | 4-cycle `1-2-3-4-1` with `∞=0` joined to 1 and 3          |
//! | `Star:k`        | centre 0 joined to leaves `1 … k`                         |

use crate::error::{Error, Result};
use crate::graph::Graph;

fn bad(name: &str, reason: impl Into<String>) -> Error {
    Error::BadParams { name: name.to_string(), reason: reason.into() }
}

/// Parses `family:p1,p2` and builds the graph.
pub fn parse(name: &str) -> Result<Graph> {
    let (family, params) = match name.split_once(':') {
        Some((f, p)) => (f, p),
        None => (name, ""),
    };
    let params: Vec<u32> = if params.trim().is_empty() {
        Vec::new()
    } else {
        params
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| bad(family, format!("`{p}` is not a non-negative integer"))))
            .collect::<Result<_>>()?
    };
    catalog(family, &params)
}

pub fn catalog(family: &str, params: &[u32]) -> Result<Graph> {
    let label = if params.is_empty() {
        family.to_string()
    } else {
        format!("{family}:{}", params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    };
    let one = |lo: u32, hi: u32| -> Result<usize> {
        match params {
            [p] if (lo..=hi).contains(p) => Ok(*p as usize),
            _ => Err(bad(family, format!("expects one parameter in {lo}..={hi}"))),
        }
    };
    match family {
        "A" => path(&label, one(1, 16)?),
        "D" => {
            let n = one(4, 16)?;
            let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1, 1)).collect();
            e.push((n - 3, n - 1, 1));
            Graph::from_edges(label, n, &e)
        }
        "E" => tree(&label, &finite_e_arms(one(6, 8)?)),
        "A_tilde" | "A_tilde_extra" => match params {
            [2, k] if (1..=3).contains(k) => triangle(&label, *k),
            [_, _] => Err(bad(family, "two-parameter form is 2,k with k in 1..=3")),
            _ if family == "A_tilde_extra" => Err(bad(family, "expects 2,k")),
            _ => {
                let n = one(1, 15)?;
                Graph::from_edges(label, n + 1, &affine_a_edges(0, n))
            }
        },
        "D_tilde" => {
            let n = one(4, 15)?;
            Graph::from_edges(label, n + 1, &affine_d_edges(0, n))
        }
        "E_tilde" => tree(&label, &affine_e_arms(one(6, 8)?)),
        "L" => {
            let m = one(1, 64)?;
            Graph::from_edges_and_loops(label, 1, &[], vec![m as u32])
        }
        "K" => match params {
            [m] if *m >= 1 => Graph::from_edges(label, 2, &[(0, 1, *m)]),
            [m, 1] if *m >= 1 => Graph::from_edges_and_loops(label, 2, &[(0, 1, *m)], vec![1, 0]),
            [m, 2] if *m >= 1 => Graph::from_edges_and_loops(label, 2, &[(0, 1, *m)], vec![1, 1]),
            _ => Err(bad(family, "expects m >= 1, optionally followed by 1 or 2")),
        },
        "A_hyp" => match params {
            [1, 1] => Graph::from_edges(label, 3, &[(0, 1, 2), (1, 2, 2)]),
            [2, 1] => Graph::from_edges(label, 4, &[(0, 1, 1), (1, 2, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)]),
            [2, 2] => Graph::from_edges(label, 4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]),
            [3, 1] => Graph::from_edges(label, 5, &[(0, 1, 1), (0, 3, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 1, 1)]),
            [_, _] => Err(bad(family, "two-parameter forms are 1,1 2,1 2,2 3,1")),
            _ => {
                let n = one(1, 7)?;
                let mut e = affine_a_edges(1, n);
                e.push((0, 1, 1));
                Graph::from_edges(label, n + 2, &e)
            }
        },
        "D_hyp" => {
            let n = one(4, 8)?;
            let mut e = affine_d_edges(1, n);
            e.push((0, 1, 1));
            Graph::from_edges(label, n + 2, &e)
        }
        "E_hyp" => {
            let n = one(6, 8)?;
            let mut arms = affine_e_arms(n);
            arms[0] += 1;
            tree(&label, &arms)
        }
        "Star" => {
            let k = one(1, 15)?;
            let e: Vec<_> = (1..=k).map(|i| (0, i, 1)).collect();
            Graph::from_edges(label, k + 1, &e)
        }
        _ => Err(Error::UnknownName(family.to_string())),
    }
}

fn path(label: &str, n: usize) -> Result<Graph> {
    let e: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1, 1)).collect();
    Graph::from_edges(label, n, &e)
}

fn triangle(label: &str, doubled: u32) -> Result<Graph> {
    let m = |k: u32| if doubled >= k { 2 } else { 1 };
    Graph::from_edges(label, 3, &[(0, 1, m(1)), (1, 2, m(2)), (0, 2, m(3))])
}

/// Extended `A_n` on vertices `off ..= off + n`.
fn affine_a_edges(off: usize, n: usize) -> Vec<(usize, usize, u32)> {
    if n == 1 {
        return vec![(off, off + 1, 2)];
    }
    (0..=n).map(|i| (off + i, off + (i + 1) % (n + 1), 1)).collect()
}

/// Extended `D_n` on vertices `off ..= off + n`, vertex `off` extended.
fn affine_d_edges(off: usize, n: usize) -> Vec<(usize, usize, u32)> {
    let mut e = vec![(off, off + 2, 1), (off + 1, off + 2, 1)];
    for i in 2..n - 2 {
        e.push((off + i, off + i + 1, 1));
    }
    e.push((off + n - 1, off + n - 2, 1));
    e.push((off + n, off + n - 2, 1));
    e
}

fn finite_e_arms(n: usize) -> Vec<usize> {
    vec![n - 4, 2, 1]
}

fn affine_e_arms(n: usize) -> Vec<usize> {
    match n {
        6 => vec![2, 2, 2],
        7 => vec![3, 3, 1],
        _ => vec![5, 2, 1],
    }
}

/// Star-shaped tree: the first arm is listed tip-first, then the centre, then
/// the remaining arms outward from the centre.
fn tree(label: &str, arms: &[usize]) -> Result<Graph> {
    let n = 1 + arms.iter().sum::<usize>();
    let first = arms[0];
    let centre = first;
    let mut e: Vec<(usize, usize, u32)> = (0..first).map(|i| (i, i + 1, 1)).collect();
    let mut next = centre + 1;
    for &len in &arms[1..] {
        let mut prev = centre;
        for _ in 0..len {
            e.push((prev, next, 1));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(label, n, &e)
}

/// Every hyperbolic graph of the classification, with the family parameters
/// used by the acceptance run.
pub fn hyperbolic_table() -> Vec<(usize, &'static str)> {
    vec![
        (1, "L:2"),
        (1, "L:3"),
        (2, "K:3"),
        (2, "K:4"),
        (2, "K:5"),
        (2, "K:1,1"),
        (2, "K:2,1"),
        (2, "K:3,1"),
        (2, "K:1,2"),
        (2, "K:2,2"),
        (2, "K:3,2"),
        (3, "A_hyp:1"),
        (3, "A_hyp:1,1"),
        (3, "A_tilde:2,1"),
        (3, "A_tilde:2,2"),
        (3, "A_tilde:2,3"),
        (4, "A_hyp:2"),
        (4, "A_hyp:2,1"),
        (4, "A_hyp:2,2"),
        (5, "A_hyp:3"),
        (5, "A_hyp:3,1"),
        (6, "A_hyp:4"),
        (6, "D_hyp:4"),
        (6, "Star:5"),
        (7, "A_hyp:5"),
        (7, "D_hyp:5"),
        (8, "A_hyp:6"),
        (8, "D_hyp:6"),
        (8, "E_hyp:6"),
        (9, "A_hyp:7"),
        (9, "D_hyp:7"),
        (9, "E_hyp:7"),
        (10, "D_hyp:8"),
        (10, "E_hyp:8"),
    ]
}

/// Finite ADE entries exercised by the acceptance run.
pub fn finite_table() -> Vec<String> {
    let mut v: Vec<String> = (1..=8).map(|n| format!("A:{n}")).collect();
    v.extend((4..=8).map(|n| format!("D:{n}")));
    v.extend((6..=8).map(|n| format!("E:{n}")));
    v.push("K:1".into());
    v
}

/// Extended ADE entries exercised by the acceptance run.
pub fn affine_table() -> Vec<String> {
    let mut v: Vec<String> = (1..=8).map(|n| format!("A_tilde:{n}")).collect();
    v.extend((4..=8).map(|n| format!("D_tilde:{n}")));
    v.extend((6..=8).map(|n| format!("E_tilde:{n}")));
    v.push("K:2".into());
    v.push("L:1".into());
    v.push("Star:4".into());
    v
}
