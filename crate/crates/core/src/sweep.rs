//! Spec enumeration for verification sweeps.

use rand::Rng;

use crate::chain_model::ChainSpec;

/// Every spec with `1 <= h <= max_h` and all cell sizes in `1..=max_cell`, in
/// lexicographic order of `(h, m, n)`.
pub fn exhaustive_specs(max_h: usize, max_cell: usize) -> Vec<ChainSpec> {
    let mut out = Vec::new();
    if max_cell == 0 {
        return out;
    }
    for h in 1..=max_h {
        let mut cells = vec![1usize; 2 * h];
        'odometer: loop {
            out.push(ChainSpec::new(cells[..h].to_vec(), cells[h..].to_vec()).unwrap());
            // last cell turns fastest
            let mut pos = 2 * h;
            loop {
                if pos == 0 {
                    break 'odometer;
                }
                pos -= 1;
                if cells[pos] < max_cell {
                    cells[pos] += 1;
                    continue 'odometer;
                }
                cells[pos] = 1;
            }
        }
    }
    out
}

/// A random spec with at most `max_vertices` vertices (at least 2).
///
/// `h` is drawn from `1..=min(max_h, max_vertices / 2)`; every cell starts at
/// one vertex and a random share of the remaining budget is scattered over the
/// `2h` cells.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize, max_h: usize) -> ChainSpec {
    assert!(max_vertices >= 2, "a double nested graph has at least two vertices");
    let h = rng.gen_range(1..=max_h.max(1).min(max_vertices / 2));
    let mut cells = vec![1usize; 2 * h];
    let extra = rng.gen_range(0..=max_vertices - 2 * h);
    for _ in 0..extra {
        let idx = rng.gen_range(0..2 * h);
        cells[idx] += 1;
    }
    ChainSpec::new(cells[..h].to_vec(), cells[h..].to_vec()).unwrap()
}
