use rayon::ThreadPoolBuilder;

/// Fixed chunk length for range partitioning. Chunk boundaries never depend on
/// the worker count, so per-chunk floating-point sums merge identically.
pub(crate) const CHUNK: u64 = 1 << 16;

/// Runs `f` inside a rayon pool with `workers` threads (at least one).
pub(crate) fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    let pool = ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("failed to build worker pool");
    pool.install(f)
}

/// Inclusive ranges `[lo, hi]` covering `[start, end]` in `CHUNK`-sized pieces.
pub(crate) fn chunks(start: u64, end: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut lo = start;
    while lo <= end {
        let hi = (lo + CHUNK - 1).min(end);
        out.push((lo, hi));
        lo = hi + 1;
    }
    out
}
