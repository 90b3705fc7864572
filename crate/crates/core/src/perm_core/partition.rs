use super::perm::Perm;
use crate::error::{Error, Result};

/// A partition of `{0..n-1}` into nonempty cells, with a per-point cell lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    cells: Vec<Vec<u32>>,
    cell_of: Vec<u32>,
}

impl BlockPartition {
    pub fn from_cells(n: usize, cells: Vec<Vec<u32>>) -> Result<Self> {
        let mut cell_of = vec![u32::MAX; n];
        for (i, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::BadPartition);
            }
            for &p in cell {
                let slot = cell_of.get_mut(p as usize).ok_or(Error::BadPartition)?;
                if *slot != u32::MAX {
                    return Err(Error::BadPartition);
                }
                *slot = i as u32;
            }
        }
        if cell_of.contains(&u32::MAX) {
            return Err(Error::BadPartition);
        }
        Ok(BlockPartition { cells, cell_of })
    }

    pub fn singletons(n: usize) -> Self {
        BlockPartition::from_cells(n, (0..n as u32).map(|p| vec![p]).collect())
            .expect("singletons")
    }

    pub fn degree(&self) -> usize {
        self.cell_of.len()
    }

    pub fn cells(&self) -> &[Vec<u32>] {
        &self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_of(&self, point: u32) -> usize {
        self.cell_of[point as usize] as usize
    }

    /// The permutation of cells induced by `p`, if `p` maps cells onto cells.
    pub fn induced_action(&self, p: &Perm) -> Option<Vec<u32>> {
        let mut action = vec![u32::MAX; self.cells.len()];
        for (i, cell) in self.cells.iter().enumerate() {
            let target = self.cell_of[p.apply(cell[0]) as usize];
            if self.cells[target as usize].len() != cell.len() {
                return None;
            }
            if cell.iter().any(|&x| self.cell_of[p.apply(x) as usize] != target) {
                return None;
            }
            action[i] = target;
        }
        Some(action)
    }

    pub fn is_preserved_by(&self, p: &Perm) -> bool {
        self.induced_action(p).is_some()
    }
}
