use serde::{Deserialize, Serialize};

use super::graphs::{build_g1, build_g2};
use super::grid::Grid;
use super::MisrError;
use crate::geometry::MisrInstance;
use crate::planar::{apply_separator, Division, EmbeddedGraph, SeparatorConfig};
use crate::Epsilon;

/// A partition of a kept part of a solution into groups that never share a
/// grid cell, plus the dropped rest. Indices refer to the instance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grouping {
    pub groups: Vec<Vec<usize>>,
    pub dropped: Vec<usize>,
    /// Largest component left by the first division.
    pub c1: usize,
    /// Largest component left by the second division.
    pub c2: usize,
}

impl Grouping {
    pub fn kept(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn max_group(&self) -> usize {
        self.groups.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Checks the partition of `solution`, the group-size bound c1·c2 and
    /// that no cell meets rectangles of two different groups.
    pub fn validate(&self, inst: &MisrInstance, solution: &[usize], grid: &Grid) -> Result<(), String> {
        let mut all: Vec<usize> = self.groups.iter().flatten().chain(&self.dropped).copied().collect();
        all.sort_unstable();
        let mut want = solution.to_vec();
        want.sort_unstable();
        if all != want {
            return Err("groups and dropped do not partition the solution".into());
        }
        if self.max_group() > self.c1 * self.c2 {
            return Err(format!("group of size {} exceeds c1*c2 = {}", self.max_group(), self.c1 * self.c2));
        }
        let mut owner = vec![None; grid.cell_count()];
        for (q, group) in self.groups.iter().enumerate() {
            for &i in group {
                for (c, r) in grid.footprint(&inst.rects[i]).cells() {
                    let slot = &mut owner[grid.cell_index(c, r)];
                    match *slot {
                        Some(o) if o != q => {
                            return Err(format!("cell ({c},{r}) meets groups {o} and {q}"));
                        }
                        _ => *slot = Some(q),
                    }
                }
            }
        }
        Ok(())
    }
}

/// Every intermediate object of the grouping pipeline.
#[derive(Clone, Debug)]
pub struct StructuredParts {
    pub g1: EmbeddedGraph,
    pub division1: Division,
    pub g2: EmbeddedGraph,
    pub division2: Division,
    pub grouping: Grouping,
}

/// Runs the two-level separator pipeline: divide G1 with ε/2, build G2 on
/// the surviving components, divide G2 with ε/(2·c1), and merge the G1
/// components inside each G2 component into a group.
pub fn structure_pipeline(
    inst: &MisrInstance,
    solution: &[usize],
    grid: &Grid,
    eps: Epsilon,
    cfg: &SeparatorConfig,
) -> Result<StructuredParts, MisrError> {
    let g1 = build_g1(inst, solution, grid)?;
    let division1 = apply_separator(&g1.graph, eps.divided_by(2), cfg);
    let c1 = division1.largest_component().max(1);
    let g2 = build_g2(inst, solution, grid, &g1, &division1)?;
    let division2 = apply_separator(&g2.graph, eps.divided_by(2 * c1 as i64), cfg);
    let c2 = division2.largest_component().max(1);
    let mut groups: Vec<Vec<usize>> = division2
        .components
        .iter()
        .map(|comp2| {
            let mut g: Vec<usize> =
                comp2.iter().flat_map(|&j| division1.components[j].iter().map(|&v| solution[v])).collect();
            g.sort_unstable();
            g
        })
        .collect();
    groups.sort();
    let mut dropped: Vec<usize> = division1
        .removed
        .iter()
        .map(|&v| solution[v])
        .chain(division2.removed.iter().flat_map(|&j| division1.components[j].iter().map(|&v| solution[v])))
        .collect();
    dropped.sort_unstable();
    let grouping = Grouping { groups, dropped, c1, c2 };
    Ok(StructuredParts { g1, division1, g2, division2, grouping })
}

pub fn structured_solution(
    inst: &MisrInstance,
    solution: &[usize],
    grid: &Grid,
    eps: Epsilon,
    cfg: &SeparatorConfig,
) -> Result<Grouping, MisrError> {
    Ok(structure_pipeline(inst, solution, grid, eps, cfg)?.grouping)
}
