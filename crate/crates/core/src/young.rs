//! Partitions, multipartitions and colored box combinatorics.
//!
//! Cell convention: `(i, j)` lies in `λ` iff `i < λ_{j+1}`, so `i` runs along
//! a row (the `q`-direction) and `j` indexes rows (the `t`-direction). The
//! residue of a cell in component `a` is `k_a + i - j mod n`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charring::{GammaWeight, ModelConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YoungError {
    #[error("parts {0:?} are not a partition (need weakly decreasing positive integers)")]
    NotPartition(Vec<u32>),
    #[error("multipartition has {got} components, expected {expected}")]
    Components { got: usize, expected: usize },
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, YoungError> {
        let decreasing = parts.windows(2).all(|p| p[0] >= p[1]);
        if !decreasing || parts.contains(&0) {
            return Err(YoungError::NotPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: u32, j: u32) -> bool {
        self.0.get(j as usize).is_some_and(|&row| i < row)
    }

    /// Cells `(i, j)` row by row.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(j, &row)| (0..row).map(move |i| (i, j as u32)))
    }

    /// Cells whose addition leaves a partition, by increasing `j`.
    pub fn addable(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for j in 0..=self.0.len() {
            let i = self.0.get(j).copied().unwrap_or(0);
            if j == 0 || i < self.0[j - 1] {
                out.push((i, j as u32));
            }
        }
        out
    }

    /// Cells whose removal leaves a partition, by increasing `j`.
    pub fn removable(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (j, &row) in self.0.iter().enumerate() {
            let next = self.0.get(j + 1).copied().unwrap_or(0);
            if row > next {
                out.push((row - 1, j as u32));
            }
        }
        out
    }

    fn with_cell(&self, (i, j): (u32, u32)) -> Partition {
        let mut parts = self.0.clone();
        let j = j as usize;
        if j == parts.len() {
            debug_assert_eq!(i, 0);
            parts.push(1);
        } else {
            debug_assert_eq!(parts[j], i);
            parts[j] += 1;
        }
        Partition(parts)
    }

    fn without_cell(&self, (i, j): (u32, u32)) -> Partition {
        let mut parts = self.0.clone();
        let j = j as usize;
        debug_assert_eq!(parts[j], i + 1);
        parts[j] -= 1;
        if parts[j] == 0 {
            parts.pop();
        }
        Partition(parts)
    }

    /// All partitions of `size`, in reverse lexicographic order.
    pub fn all_of_size(size: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for part in (1..=rest.min(max)).rev() {
                prefix.push(part);
                rec(rest - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, size, &mut Vec::new(), &mut out);
        out
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (idx, p) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// A cell `(i, j)` of component `component` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub component: usize,
    pub i: u32,
    pub j: u32,
}

impl Cell {
    pub fn residue(&self, config: &ModelConfig) -> GammaWeight {
        box_residue(self, config)
    }
}

/// `k_a + i - j mod n`.
pub fn box_residue(cell: &Cell, config: &ModelConfig) -> GammaWeight {
    let k = config.colors()[cell.component] as i64;
    config.weight(k + cell.i as i64 - cell.j as i64)
}

/// A `w`-tuple of partitions. Ordered by total size, then lexicographically
/// on the parts, which gives stable basis indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multipartition(Vec<Partition>);

impl Multipartition {
    pub fn new(parts: Vec<Partition>) -> Self {
        Multipartition(parts)
    }

    /// Checks the component count against a configuration.
    pub fn for_config(parts: Vec<Partition>, config: &ModelConfig) -> Result<Self, YoungError> {
        if parts.len() != config.w() {
            return Err(YoungError::Components {
                got: parts.len(),
                expected: config.w(),
            });
        }
        Ok(Multipartition(parts))
    }

    /// Parses nested arrays such as `[[2,1],[]]`.
    pub fn from_nested(parts: Vec<Vec<u32>>) -> Result<Self, YoungError> {
        parts
            .into_iter()
            .map(Partition::new)
            .collect::<Result<Vec<_>, _>>()
            .map(Multipartition)
    }

    pub fn empty(w: usize) -> Self {
        Multipartition(vec![Partition::empty(); w])
    }

    pub fn parts(&self) -> &[Partition] {
        &self.0
    }

    pub fn w(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().map(Partition::size).sum()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(component, p)| p.cells().map(move |(i, j)| Cell { component, i, j }))
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.0
            .get(cell.component)
            .is_some_and(|p| p.contains(cell.i, cell.j))
    }

    /// Number of cells of each residue, `v_{λ,k}` for `k = 0..n`.
    pub fn residue_vector(&self, config: &ModelConfig) -> Vec<i64> {
        let mut v = vec![0i64; config.n() as usize];
        for cell in self.cells() {
            v[box_residue(&cell, config).value() as usize] += 1;
        }
        v
    }

    pub fn addable_cells(&self) -> Vec<Cell> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(component, p)| {
                p.addable()
                    .into_iter()
                    .map(move |(i, j)| Cell { component, i, j })
            })
            .collect()
    }

    pub fn removable_cells(&self) -> Vec<Cell> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(component, p)| {
                p.removable()
                    .into_iter()
                    .map(move |(i, j)| Cell { component, i, j })
            })
            .collect()
    }

    /// Adds an addable cell. Panics if the cell is not addable.
    pub fn with_cell(&self, cell: &Cell) -> Multipartition {
        let mut parts = self.0.clone();
        let p = &parts[cell.component];
        assert!(
            p.addable().contains(&(cell.i, cell.j)),
            "cell {cell:?} is not addable to {self}"
        );
        parts[cell.component] = p.with_cell((cell.i, cell.j));
        Multipartition(parts)
    }

    /// Removes a removable cell. Panics if the cell is not removable.
    pub fn without_cell(&self, cell: &Cell) -> Multipartition {
        let mut parts = self.0.clone();
        let p = &parts[cell.component];
        assert!(
            p.removable().contains(&(cell.i, cell.j)),
            "cell {cell:?} is not removable from {self}"
        );
        parts[cell.component] = p.without_cell((cell.i, cell.j));
        Multipartition(parts)
    }

    /// If `self` is obtained from `other` by adding one cell, that cell.
    pub fn cell_over(&self, other: &Multipartition) -> Option<Cell> {
        if self.w() != other.w() || self.size() != other.size() + 1 {
            return None;
        }
        let mut found = None;
        for (component, (a, b)) in self.0.iter().zip(&other.0).enumerate() {
            if a == b {
                continue;
            }
            if found.is_some() {
                return None;
            }
            let (i, j) = b.addable().into_iter().find(|&c| b.with_cell(c) == *a)?;
            found = Some(Cell { component, i, j });
        }
        found
    }
}

impl PartialOrd for Multipartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Multipartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (idx, p) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Addable and removable cells of residue `k`.
pub fn addable_removable(
    lambda: &Multipartition,
    config: &ModelConfig,
    k: GammaWeight,
) -> (Vec<Cell>, Vec<Cell>) {
    let keep = |c: &Cell| box_residue(c, config) == k;
    let addable = lambda.addable_cells().into_iter().filter(keep).collect();
    let removable = lambda.removable_cells().into_iter().filter(keep).collect();
    (addable, removable)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    /// Add one cell.
    Up,
    /// Remove one cell.
    Down,
}

/// Multipartitions adjacent to `lambda` through one residue-`k` cell, with
/// the cell that differs.
pub fn neighbors(
    lambda: &Multipartition,
    config: &ModelConfig,
    k: GammaWeight,
    dir: Dir,
) -> Vec<(Multipartition, Cell)> {
    let (addable, removable) = addable_removable(lambda, config, k);
    match dir {
        Dir::Up => addable
            .into_iter()
            .map(|c| (lambda.with_cell(&c), c))
            .collect(),
        Dir::Down => removable
            .into_iter()
            .map(|c| (lambda.without_cell(&c), c))
            .collect(),
    }
}

/// Every multipartition with at most `max_boxes` cells, in canonical order.
pub fn enumerate(config: &ModelConfig, max_boxes: u32) -> Vec<Multipartition> {
    let by_size: Vec<Vec<Partition>> = (0..=max_boxes).map(Partition::all_of_size).collect();
    let mut out = Vec::new();
    let w = config.w();
    for total in 0..=max_boxes {
        let mut sizes = vec![0u32; w];
        compositions(total, 0, &mut sizes, &mut |sizes| {
            let mut current = Vec::with_capacity(w);
            product(sizes, &by_size, &mut current, &mut out);
        });
    }
    out.sort();
    out
}

fn compositions(rest: u32, idx: usize, sizes: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if idx + 1 == sizes.len() {
        sizes[idx] = rest;
        f(sizes);
        return;
    }
    for s in 0..=rest {
        sizes[idx] = s;
        compositions(rest - s, idx + 1, sizes, f);
    }
}

fn product(
    sizes: &[u32],
    by_size: &[Vec<Partition>],
    current: &mut Vec<Partition>,
    out: &mut Vec<Multipartition>,
) {
    let idx = current.len();
    if idx == sizes.len() {
        out.push(Multipartition(current.clone()));
        return;
    }
    for p in &by_size[sizes[idx] as usize] {
        current.push(p.clone());
        product(sizes, by_size, current, out);
        current.pop();
    }
}

/// An enumerated truncation with an index lookup.
#[derive(Debug, Clone)]
pub struct Basis {
    max_boxes: u32,
    elements: Vec<Multipartition>,
    index: HashMap<Multipartition, usize>,
}

impl Basis {
    pub fn new(config: &ModelConfig, max_boxes: u32) -> Self {
        let elements = enumerate(config, max_boxes);
        let index = elements
            .iter()
            .enumerate()
            .map(|(idx, m)| (m.clone(), idx))
            .collect();
        Basis {
            max_boxes,
            elements,
            index,
        }
    }

    pub fn max_boxes(&self) -> u32 {
        self.max_boxes
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Multipartition] {
        &self.elements
    }

    pub fn get(&self, idx: usize) -> &Multipartition {
        &self.elements[idx]
    }

    pub fn index_of(&self, m: &Multipartition) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Number of elements with at most `boxes` cells (a prefix of the basis).
    pub fn prefix_len(&self, boxes: u32) -> usize {
        self.elements.partition_point(|m| m.size() <= boxes)
    }
}
