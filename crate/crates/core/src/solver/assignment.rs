//! Best-first enumeration of agent-to-goal assignments.
//!
//! Hungarian solves each subproblem; Murty's partitioning yields the next
//! best assignment on demand.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::model::Cost;

/// A perfect matching: `goals[a]` is the goal vertex served by agent `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    pub goals: Vec<usize>,
    pub cost: Cost,
}

/// Stands in for a forbidden pair; far above any real path cost sum.
const FORBIDDEN: i64 = 1 << 40;

/// Minimum-cost perfect matching on a square matrix, `None` entries
/// forbidden. Returns the column of each row, or `None` if every perfect
/// matching uses a forbidden entry.
pub fn hungarian(costs: &[Vec<Option<Cost>>]) -> Option<(Vec<usize>, Cost)> {
    let n = costs.len();
    if n == 0 {
        return Some((Vec::new(), 0));
    }
    let cell = |i: usize, j: usize| costs[i][j].map_or(FORBIDDEN, |c| (c as i64).min(FORBIDDEN));
    // 1-based potentials; column 0 is a sentinel.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![i64::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cell(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut cols = vec![0; n];
    for j in 1..=n {
        cols[p[j] - 1] = j - 1;
    }
    let mut total: Cost = 0;
    for (i, &j) in cols.iter().enumerate() {
        total += costs[i][j]?;
    }
    Some((cols, total))
}

/// Subproblem of the Murty partition with its best matching `goals`. Rows
/// `0..fixed` keep the columns they have in `goals`; pairs in `banned` are
/// excluded.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Cell {
    cost: Cost,
    goals: Vec<usize>,
    fixed: usize,
    banned: Vec<(usize, usize)>,
}

/// Yields every perfect matching of a cost matrix exactly once, in
/// nondecreasing order of cost. Ties are broken by the goal vector.
#[derive(Debug, Clone)]
pub struct AssignmentEnumerator {
    costs: Vec<Vec<Option<Cost>>>,
    heap: BinaryHeap<Reverse<Cell>>,
}

impl AssignmentEnumerator {
    /// `costs[a][g]` is the optimistic cost of agent `a` serving goal `g`,
    /// `None` when the pair is not allowed. The matrix must be square.
    pub fn new(costs: Vec<Vec<Option<Cost>>>) -> Self {
        assert!(costs.iter().all(|r| r.len() == costs.len()), "cost matrix must be square");
        let mut heap = BinaryHeap::new();
        if let Some((goals, cost)) = hungarian(&costs) {
            heap.push(Reverse(Cell {
                cost,
                goals,
                fixed: 0,
                banned: Vec::new(),
            }));
        }
        AssignmentEnumerator { costs, heap }
    }

    pub fn costs(&self) -> &[Vec<Option<Cost>>] {
        &self.costs
    }

    /// Cost of the assignment the next call to `next` returns.
    pub fn peek_cost(&self) -> Option<Cost> {
        self.heap.peek().map(|c| c.0.cost)
    }

    fn solve_cell(&self, pinned: &[usize], banned: &[(usize, usize)]) -> Option<(Vec<usize>, Cost)> {
        let mut m = self.costs.clone();
        for (r, &c) in pinned.iter().enumerate() {
            for (j, cell) in m[r].iter_mut().enumerate() {
                if j != c {
                    *cell = None;
                }
            }
            for row in m.iter_mut().skip(pinned.len()) {
                row[c] = None;
            }
        }
        for &(r, c) in banned {
            m[r][c] = None;
        }
        hungarian(&m)
    }
}

impl Iterator for AssignmentEnumerator {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        let Reverse(cell) = self.heap.pop()?;
        let n = self.costs.len();
        for r in cell.fixed..n {
            let mut banned: Vec<_> = cell.banned.iter().filter(|&&(br, _)| br >= r).copied().collect();
            banned.push((r, cell.goals[r]));
            if let Some((goals, cost)) = self.solve_cell(&cell.goals[..r], &banned) {
                self.heap.push(Reverse(Cell {
                    cost,
                    goals,
                    fixed: r,
                    banned,
                }));
            }
        }
        Some(Assignment {
            goals: cell.goals,
            cost: cell.cost,
        })
    }
}

/// Pops the next best assignment, or `None` once all are exhausted.
pub fn next_best_assignment(state: &mut AssignmentEnumerator) -> Option<Assignment> {
    state.next()
}
