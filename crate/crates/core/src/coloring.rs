//! Biquandle colorings of diagram edges and Fox colorings.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{solve_mod, IntMatrix};
use crate::biquandle::Biquandle;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::numbering::Mod2Numbering;

/// Edge id → biquandle element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Coloring(pub Vec<usize>);

impl Coloring {
    pub fn colors(&self) -> &[usize] {
        &self.0
    }

    /// At every crossing `R(inputs) = outputs`.
    pub fn is_valid(&self, d: &Diagram, b: &Biquandle) -> bool {
        self.0.len() == d.edge_count()
            && self.0.iter().all(|&c| c < b.order())
            && d.crossings().iter().all(|c| {
                let [i0, i1] = c.inputs();
                let [o0, o1] = c.outputs();
                b.r(self.0[i0], self.0[i1]) == (self.0[o0], self.0[o1])
            })
    }
}

fn assign(colors: &mut [Option<usize>], e: usize, v: usize, changed: &mut bool) -> bool {
    match colors[e] {
        Some(w) => w == v,
        None => {
            colors[e] = Some(v);
            *changed = true;
            true
        }
    }
}

/// Forces colors through crossings using `R`, `R̄` and the one-sided inverses.
/// Returns `false` on a contradiction.
fn propagate(d: &Diagram, b: &Biquandle, colors: &mut [Option<usize>]) -> bool {
    loop {
        let mut changed = false;
        for c in d.crossings() {
            let [i0, i1] = c.inputs();
            let [o0, o1] = c.outputs();
            let ok = match (colors[i0], colors[i1], colors[o0], colors[o1]) {
                (Some(a1), Some(a2), _, _) => {
                    let (a3, a4) = b.r(a1, a2);
                    assign(colors, o0, a3, &mut changed) && assign(colors, o1, a4, &mut changed)
                }
                (_, _, Some(a3), Some(a4)) => {
                    let (a1, a2) = b.rbar(a3, a4);
                    assign(colors, i0, a1, &mut changed) && assign(colors, i1, a2, &mut changed)
                }
                (Some(a1), None, Some(a3), None) => {
                    let a2 = b.left_inverse(a1, a3);
                    assign(colors, i1, a2, &mut changed)
                }
                (None, Some(a2), None, Some(a4)) => {
                    let a1 = b.right_inverse(a2, a4);
                    assign(colors, i0, a1, &mut changed)
                }
                _ => true,
            };
            if !ok {
                return false;
            }
        }
        if !changed {
            return true;
        }
    }
}

struct Frame {
    colors: Vec<Option<usize>>,
    edge: usize,
    next: usize,
}

/// Depth-first enumeration of colorings, branching on the lowest uncolored
/// edge in increasing color order; yields colorings in lexicographic order of
/// the branch colors.
pub struct Colorings<'a> {
    d: &'a Diagram,
    b: &'a Biquandle,
    stack: Vec<Frame>,
}

impl<'a> Colorings<'a> {
    pub fn new(d: &'a Diagram, b: &'a Biquandle) -> Self {
        Self::from_partial(d, b, vec![None; d.edge_count()])
    }

    fn from_partial(d: &'a Diagram, b: &'a Biquandle, mut colors: Vec<Option<usize>>) -> Self {
        let mut stack = Vec::new();
        if propagate(d, b, &mut colors) {
            let edge = colors.iter().position(Option::is_none).unwrap_or(usize::MAX);
            stack.push(Frame {
                colors,
                edge,
                next: 0,
            });
        }
        Colorings { d, b, stack }
    }
}

impl Iterator for Colorings<'_> {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        while let Some(top) = self.stack.last_mut() {
            if top.edge == usize::MAX {
                // fully determined frame: emit once
                let frame = self.stack.pop().unwrap();
                return Some(Coloring(frame.colors.into_iter().map(Option::unwrap).collect()));
            }
            if top.next == self.b.order() {
                self.stack.pop();
                continue;
            }
            let v = top.next;
            top.next += 1;
            let mut colors = top.colors.clone();
            colors[top.edge] = Some(v);
            if propagate(self.d, self.b, &mut colors) {
                let edge = colors.iter().position(Option::is_none).unwrap_or(usize::MAX);
                self.stack.push(Frame {
                    colors,
                    edge,
                    next: 0,
                });
            }
        }
        None
    }
}

/// Colorings in deterministic order, at most `limit` of them.
pub fn enumerate_colorings(d: &Diagram, b: &Biquandle, limit: Option<usize>) -> Vec<Coloring> {
    let it = Colorings::new(d, b);
    match limit {
        Some(k) => it.take(k).collect(),
        None => it.collect(),
    }
}

/// Exact number of colorings; partitions on the color of edge 0.
pub fn count_colorings(d: &Diagram, b: &Biquandle) -> u64 {
    if d.edge_count() == 0 {
        return 1;
    }
    (0..b.order())
        .into_par_iter()
        .map(|v| {
            let mut colors = vec![None; d.edge_count()];
            colors[0] = Some(v);
            Colorings::from_partial(d, b, colors).count() as u64
        })
        .sum()
}

/// Edge id → residue mod n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FoxColoring(pub Vec<u64>);

/// Linear system of Fox colorings on edges: `over_in = over_out` and
/// `under_out + under_in = 2·over_in` at every crossing.
pub fn fox_system(d: &Diagram) -> IntMatrix {
    let n = d.edge_count();
    let mut rows = Vec::new();
    for c in d.crossings() {
        let mut r = vec![0i64; n];
        r[c.over_in] += 1;
        r[c.over_out] -= 1;
        rows.push(r);
        let mut r = vec![0i64; n];
        r[c.under_out] += 1;
        r[c.under_in] += 1;
        r[c.over_in] -= 2;
        rows.push(r);
    }
    IntMatrix::from_rows(&rows, n)
}

pub fn is_fox_coloring(d: &Diagram, n: u64, f: &FoxColoring) -> bool {
    f.0.len() == d.edge_count()
        && f.0.iter().all(|&x| x < n)
        && d.crossings().iter().all(|c| {
            let o = f.0[c.over_in];
            o == f.0[c.over_out] && (f.0[c.under_out] + f.0[c.under_in]) % n == (2 * o) % n
        })
}

pub fn fox_count(d: &Diagram, n: u64) -> u64 {
    use num_traits::ToPrimitive;
    solve_mod(&fox_system(d), n).count().to_u64().expect("count fits in u64")
}

/// All Fox n-colorings, in the solver's enumeration order.
pub fn fox_colorings(d: &Diagram, n: u64) -> Vec<FoxColoring> {
    solve_mod(&fox_system(d), n).iter().map(FoxColoring).collect()
}

/// `α ↦ (-1)^ε(α) · c(α)` sends colorings by the abelian Wada biquandle on
/// `Z_n` to Fox n-colorings, given a mod-2 Alexander numbering `ε`.
pub fn fox_correspondence(
    d: &Diagram,
    numbering: &Mod2Numbering,
    c: &Coloring,
    n: u64,
) -> Result<FoxColoring> {
    if !numbering.is_valid(d) {
        return Err(Error::Precondition("not a mod-2 Alexander numbering of this diagram".into()));
    }
    if c.0.len() != d.edge_count() {
        return Err(Error::Precondition("coloring does not match the diagram".into()));
    }
    let values = c
        .0
        .iter()
        .zip(numbering.values())
        .map(|(&x, &eps)| {
            let x = x as u64 % n;
            if eps == 0 {
                x
            } else {
                (n - x) % n
            }
        })
        .collect();
    Ok(FoxColoring(values))
}
