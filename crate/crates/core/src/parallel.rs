//! Deterministic block summation, optionally spread over threads.
//!
//! Terms are grouped into fixed blocks of 1024; each block is accumulated
//! sequentially with Neumaier compensation, and the block partials are
//! reduced in block order. The grouping never depends on the thread count,
//! so the result is bit-identical whether one thread or many do the work.

use crate::seqcore::Neumaier;
use std::sync::atomic::{AtomicUsize, Ordering};

static THREADS: AtomicUsize = AtomicUsize::new(1);

const BLOCK: usize = 1024;

/// Set the worker count used by [`block_sum`] (1 = sequential).
pub fn set_threads(n: usize) {
    THREADS.store(n.max(1), Ordering::Relaxed);
}

pub fn threads() -> usize {
    THREADS.load(Ordering::Relaxed)
}

fn block_partial<T: Sync>(items: &[T], f: &(impl Fn(&T) -> f64 + Sync)) -> f64 {
    let mut acc = Neumaier::default();
    for x in items {
        acc.add(f(x));
    }
    acc.value()
}

/// Sum of f over the given points, in deterministic block order.
pub fn block_sum<T: Sync>(points: &[T], f: impl Fn(&T) -> f64 + Sync) -> f64 {
    let t = threads();
    let blocks: Vec<&[T]> = points.chunks(BLOCK).collect();
    let partials: Vec<f64> = if t <= 1 || blocks.len() <= 1 {
        blocks.iter().map(|b| block_partial(b, &f)).collect()
    } else {
        let mut out = vec![0.0; blocks.len()];
        let per = blocks.len().div_ceil(t);
        let f = &f;
        let blocks = &blocks;
        std::thread::scope(|scope| {
            for (w, chunk) in out.chunks_mut(per).enumerate() {
                scope.spawn(move || {
                    for (j, slot) in chunk.iter_mut().enumerate() {
                        *slot = block_partial(blocks[w * per + j], f);
                    }
                });
            }
        });
        out
    };
    let mut total = Neumaier::default();
    for p in partials {
        total.add(p);
    }
    total.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thread_count_does_not_change_bits() {
        let points: Vec<f64> = (1..5000u32).map(|n| n as f64).collect();
        let f = |x: &f64| 1.0 / (x * x) - 1.0 / (x * x * x);
        set_threads(1);
        let a = block_sum(&points, f);
        set_threads(4);
        let b = block_sum(&points, f);
        set_threads(1);
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
