//! Brute-force ground truth: the edge-path group of an enumerated cube
//! complex component, and its first homology.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::{CubeCell, CubeComplex};
use crate::error::Error;
use crate::graph::{CellRef, Graph};
use crate::group::{
    abelianization, smith_normal_form, Abelianization, Generator, Presentation, Word,
};
use crate::planner::Motion;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OraclePresentation {
    pub presentation: Presentation,
    pub component: usize,
    /// Index of the base 0-cell.
    pub base: usize,
    /// Generator index of every 1-cell of the component off the spanning tree.
    pub generator_of: Vec<Option<usize>>,
}

/// Edge-path group of one component: generators are the 1-cells off a BFS
/// spanning tree rooted at the smallest 0-cell, relators are the square
/// boundaries with tree cells dropped.
pub fn pi1_presentation(
    complex: &CubeComplex,
    component: usize,
) -> Result<OraclePresentation, Error> {
    let comp = complex.component_of();
    let members: Vec<usize> = (0..comp.len()).filter(|&i| comp[i] == component).collect();
    let Some(&base) = members.first() else {
        return Err(Error::UnknownComponent(component));
    };

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); complex.zero_cells.len()];
    for (c, &(a, b)) in complex.boundary1.iter().enumerate() {
        adj[a].push(c);
        if b != a {
            adj[b].push(c);
        }
    }
    let mut parent: Vec<Option<usize>> = vec![None; complex.zero_cells.len()];
    let mut seen = vec![false; complex.zero_cells.len()];
    let mut tree = vec![false; complex.one_cells.len()];
    seen[base] = true;
    let mut queue = VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        for &c in &adj[x] {
            let (a, b) = complex.boundary1[c];
            let y = if a == x { b } else { a };
            if !seen[y] {
                seen[y] = true;
                tree[c] = true;
                parent[y] = Some(c);
                queue.push_back(y);
            }
        }
    }

    // tree path from the base to each 0-cell, as 0-cell indices
    let path_to = |mut x: usize| {
        let mut cells = vec![x];
        while let Some(c) = parent[x] {
            let (a, b) = complex.boundary1[c];
            x = if a == x { b } else { a };
            cells.push(x);
        }
        cells.reverse();
        cells
    };
    let frames_of = |ids: &[usize]| -> Vec<Vec<_>> {
        ids.iter()
            .map(|&i| complex.zero_cells[i].positions())
            .collect()
    };

    let mut generator_of = vec![None; complex.one_cells.len()];
    let mut generators = Vec::new();
    for (c, &(a, b)) in complex.boundary1.iter().enumerate() {
        if comp[a] != component || tree[c] {
            continue;
        }
        generator_of[c] = Some(generators.len());
        let witness = (!complex.ordered).then(|| {
            let mut ids = path_to(a);
            let mut back = path_to(b);
            back.reverse();
            ids.extend(back);
            Motion::from_frames(frames_of(&ids))
        });
        generators.push(Generator {
            name: format!("c{c}"),
            witness,
        });
    }
    let relators = complex
        .boundary2
        .iter()
        .filter(|bd| comp[complex.boundary1[bd[0].0].0] == component)
        .map(|bd| {
            Word::new(
                bd.iter()
                    .filter_map(|&(c, s)| generator_of[c].map(|g| (g, s)))
                    .collect(),
            )
        })
        .collect();
    let presentation = Presentation {
        generators,
        relators,
        base: (!complex.ordered).then(|| complex.zero_cells[base].positions()),
    };
    Ok(OraclePresentation {
        presentation,
        component,
        base,
        generator_of,
    })
}

pub fn h1(complex: &CubeComplex, component: usize) -> Result<Abelianization, Error> {
    Ok(abelianization(
        &pi1_presentation(complex, component)?.presentation,
    ))
}

/// Index of the component containing the given unordered configuration.
pub fn component_containing(
    complex: &CubeComplex,
    positions: &[crate::graph::VertexId],
) -> Option<usize> {
    let cell = crate::complex::unordered_zero_cell(positions);
    let idx = complex.zero_cells.binary_search(&cell).ok()?;
    Some(complex.component_of()[idx])
}

impl OraclePresentation {
    /// Exponent vector over the generators of a closed walk of an unordered
    /// complex. A step between configurations joined by parallel 1-cells
    /// uses the first of them.
    pub fn chain_of(
        &self,
        complex: &CubeComplex,
        graph: &Graph,
        motion: &Motion,
    ) -> Result<Vec<i64>, Error> {
        let zero = complex.zero_index();
        let one = complex.one_index();
        let mut chain = vec![0i64; self.presentation.generators.len()];
        for (i, w) in motion.frames.windows(2).enumerate() {
            let gone: Vec<_> = w[0].iter().filter(|v| !w[1].contains(v)).copied().collect();
            let came: Vec<_> = w[1].iter().filter(|v| !w[0].contains(v)).copied().collect();
            let edge = match (gone.as_slice(), came.as_slice()) {
                ([a], [b]) => graph.edge_between(*a, *b),
                ([], []) => w[0].iter().find_map(|&v| {
                    graph
                        .incident(v)
                        .iter()
                        .copied()
                        .find(|&e| graph.is_loop(e))
                }),
                _ => None,
            }
            .ok_or_else(|| Error::InvalidMotion(format!("step {i} is not a 1-cell")))?;
            let moving = gone
                .first()
                .copied()
                .unwrap_or_else(|| graph.endpoints(edge).0);
            let mut cells: Vec<CellRef> = w[0]
                .iter()
                .filter(|&&v| v != moving)
                .map(|&v| CellRef::Vertex(v))
                .collect();
            cells.push(CellRef::Edge(edge));
            cells.sort();
            let c = *one.get(&CubeCell { cells }).ok_or_else(|| {
                Error::InvalidMotion(format!("step {i} is not a 1-cell of the complex"))
            })?;
            let from = zero[&crate::complex::unordered_zero_cell(&w[0])];
            let sign = if complex.boundary1[c].0 == from {
                1
            } else {
                -1
            };
            if let Some(g) = self.generator_of[c] {
                chain[g] += sign;
            }
        }
        Ok(chain)
    }

    /// Whether an exponent vector lies in the relator lattice, i.e. is zero
    /// in first homology.
    pub fn is_null_homologous(&self, chain: &[i64]) -> bool {
        if chain.iter().all(|&x| x == 0) {
            return true;
        }
        let m = self.presentation.exponent_matrix();
        if m.rows == 0 {
            return false;
        }
        let snf = smith_normal_form(&m);
        for j in 0..m.cols {
            let mut x = BigInt::zero();
            for (i, &c) in chain.iter().enumerate() {
                if c != 0 {
                    x += BigInt::from(c) * &snf.v.data[i][j];
                }
            }
            let d = snf.diagonal.get(j).cloned().unwrap_or_else(BigInt::zero);
            let ok = if d.is_zero() {
                x.is_zero()
            } else {
                (&x % &d).is_zero()
            };
            if !ok {
                return false;
            }
        }
        true
    }
}
