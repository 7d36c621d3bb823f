//! Test-only oracles, independent of the library's decision procedures.

#![allow(dead_code)]

use tract_matroids::Turn;

/// Exact set arithmetic for iterated phase hyperaddition over the 24th roots
/// of unity, on a 48-cell model of the circle: even cells are the roots,
/// odd cells the open gaps between adjacent roots. Every set reachable by
/// folding binary hyperaddition from 24th roots is a union of cells plus
/// possibly zero, because minor-arc endpoints stay on the grid.
pub mod nested_arcs {
    use super::*;

    const CELLS: usize = 48;

    #[derive(Clone, Debug, PartialEq, Eq)]
    pub struct ArcSet {
        pub zero: bool,
        pub cells: [bool; CELLS],
    }

    fn cell_of(t: &Turn) -> usize {
        let num = t.numer();
        let den = t.denom();
        assert_eq!(24 % den, 0, "oracle works over 24th roots, got {t}");
        (num * (24 / den) * 2) as usize % CELLS
    }

    fn point(t: &Turn) -> ArcSet {
        let mut cells = [false; CELLS];
        cells[cell_of(t)] = true;
        ArcSet { zero: false, cells }
    }

    /// Open arc of positions strictly between `from` and `to`, CCW.
    fn open_arc(from: usize, to: usize) -> [bool; CELLS] {
        let mut cells = [false; CELLS];
        let mut p = (from + 1) % CELLS;
        while p != to {
            cells[p] = true;
            p = (p + 1) % CELLS;
        }
        cells
    }

    /// The hypersum of one cell with a root point `g` (as a cell index).
    fn cell_plus_point(cell: usize, g: usize) -> ArcSet {
        let mut out = ArcSet { zero: false, cells: [false; CELLS] };
        if cell.is_multiple_of(2) {
            // point ⊞ point
            if cell == g {
                out.cells[cell] = true;
            } else if (cell + CELLS / 2) % CELLS == g {
                out.zero = true;
                out.cells[cell] = true;
                out.cells[g] = true;
            } else {
                let d = (g + CELLS - cell) % CELLS;
                let arc = if d < CELLS / 2 { open_arc(cell, g) } else { open_arc(g, cell) };
                out.cells = arc;
            }
        } else {
            // gap ⊞ point: the gap never contains g or -g, so the minor arcs
            // union to a single open arc ending at the gap's far edge.
            let d = (g + CELLS - cell) % CELLS;
            let arc = if d > CELLS / 2 {
                // gap lies counterclockwise of g
                open_arc(g, (cell + 1) % CELLS)
            } else {
                open_arc((cell + CELLS - 1) % CELLS, g)
            };
            out.cells = arc;
        }
        out
    }

    fn hyperadd_point(s: &ArcSet, g: &Turn) -> ArcSet {
        let gi = cell_of(g);
        let mut out = ArcSet { zero: false, cells: [false; CELLS] };
        if s.zero {
            out.cells[gi] = true;
        }
        for c in 0..CELLS {
            if !s.cells[c] {
                continue;
            }
            let part = cell_plus_point(c, gi);
            out.zero |= part.zero;
            for p in 0..CELLS {
                out.cells[p] |= part.cells[p];
            }
        }
        out
    }

    /// Whether zero lies in the iterated hypersum of the terms.
    pub fn is_null(terms: &[Turn]) -> bool {
        let Some((first, rest)) = terms.split_first() else {
            return true;
        };
        let mut set = point(first);
        for t in rest {
            set = hyperadd_point(&set, t);
        }
        set.zero
    }
}
