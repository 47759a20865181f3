//! Order-preserving evaluation helpers. With the `parallel` feature these
//! run on rayon; results never depend on the number of threads.

use alloc::vec::Vec;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Items are evaluated in fixed-size chunks so that early exit inspects the
/// same prefix regardless of scheduling.
const CHUNK: usize = 8;

#[cfg(feature = "parallel")]
pub(crate) fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Evaluates `f` over `items` in order and returns every result up to and
/// including the first one accepted by `stop`. Later results computed in
/// the same chunk are discarded.
#[cfg(feature = "parallel")]
pub(crate) fn prefix_until<T, U, F, S>(items: &[T], f: F, stop: S) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
    S: Fn(&U) -> bool,
{
    let mut out = Vec::new();
    for chunk in items.chunks(CHUNK) {
        let results: Vec<U> = chunk.par_iter().map(&f).collect();
        for r in results {
            let done = stop(&r);
            out.push(r);
            if done {
                return out;
            }
        }
    }
    out
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn prefix_until<T, U, F, S>(items: &[T], f: F, stop: S) -> Vec<U>
where
    F: Fn(&T) -> U,
    S: Fn(&U) -> bool,
{
    let _ = CHUNK;
    let mut out = Vec::new();
    for item in items {
        let r = f(item);
        let done = stop(&r);
        out.push(r);
        if done {
            break;
        }
    }
    out
}
