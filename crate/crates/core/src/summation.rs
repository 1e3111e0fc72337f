//! Compensated and pairwise summation helpers.

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

const PAIRWISE_LEAF: usize = 64;
const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Pairwise sum of `f(i)` for `i` in `range`.
///
/// The reduction tree depends only on the range length, so the result is
/// bit-identical whether the halves run serially or on the rayon pool.
pub(crate) fn pairwise_sum<F>(start: usize, end: usize, f: &F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let len = end - start;
    if len <= PAIRWISE_LEAF {
        return (start..end).map(f).sum();
    }
    let mid = start + len / 2;
    let (a, b) = if len >= PARALLEL_THRESHOLD {
        rayon::join(|| pairwise_sum(start, mid, f), || pairwise_sum(mid, end, f))
    } else {
        (pairwise_sum(start, mid, f), pairwise_sum(mid, end, f))
    };
    a + b
}
