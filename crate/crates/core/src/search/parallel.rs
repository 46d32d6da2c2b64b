//! Ordered parallel execution over fixed-size segments.
//!
//! Workers claim segment indices from a shared counter and send results to
//! the calling thread, which releases them strictly in index order. Workers
//! may run at most `window` segments ahead of the merger, which bounds the
//! memory held by out-of-order results.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::mpsc;
use std::sync::{Condvar, Mutex};

use crate::error::{Error, Result};

struct Shared {
    next: u64,
    released: u64,
    stop: bool,
}

/// Runs `work(seg_lo, seg_hi)` over `[lo, hi]` split into `segment_size`
/// pieces, then `merge(seg_lo, seg_hi, result)` in ascending order.
///
/// Returns `Ok(true)` when every segment was merged and `Ok(false)` when
/// `merge` asked to stop early.
pub(crate) fn run_ordered<T, W, M>(
    lo: u64,
    hi: u64,
    segment_size: u64,
    workers: usize,
    work: W,
    mut merge: M,
) -> Result<bool>
where
    T: Send,
    W: Fn(u64, u64) -> Result<T> + Sync,
    M: FnMut(u64, u64, T) -> Result<ControlFlow<()>>,
{
    assert!(segment_size >= 1 && workers >= 1);
    if lo > hi {
        return Ok(true);
    }
    let total = (hi - lo) / segment_size + 1;
    let bounds = |idx: u64| {
        let a = lo + idx * segment_size;
        (a, a.saturating_add(segment_size - 1).min(hi))
    };
    let window = 2 * workers as u64 + 2;

    let state = Mutex::new(Shared {
        next: 0,
        released: 0,
        stop: false,
    });
    let wake = Condvar::new();
    let (tx, rx) = mpsc::channel::<(u64, Result<T>)>();

    std::thread::scope(|scope| {
        for _ in 0..workers.min(total as usize) {
            let tx = tx.clone();
            let (state, wake, work) = (&state, &wake, &work);
            scope.spawn(move || loop {
                let idx = {
                    let mut s = state.lock().unwrap();
                    while !s.stop && s.next < total && s.next >= s.released + window {
                        s = wake.wait(s).unwrap();
                    }
                    if s.stop || s.next >= total {
                        return;
                    }
                    s.next += 1;
                    s.next - 1
                };
                let (a, b) = bounds(idx);
                if tx.send((idx, work(a, b))).is_err() {
                    return;
                }
            });
        }
        drop(tx);

        let halt = |state: &Mutex<Shared>| {
            state.lock().unwrap().stop = true;
            wake.notify_all();
        };

        let mut pending: BTreeMap<u64, Result<T>> = BTreeMap::new();
        let mut next_release = 0u64;
        while next_release < total {
            let Ok((idx, res)) = rx.recv() else {
                halt(&state);
                return Err(Error::WorkerPanic);
            };
            pending.insert(idx, res);
            while let Some(res) = pending.remove(&next_release) {
                let (a, b) = bounds(next_release);
                let flow = res.and_then(|value| merge(a, b, value));
                next_release += 1;
                match flow {
                    Ok(ControlFlow::Continue(())) => {
                        state.lock().unwrap().released = next_release;
                        wake.notify_all();
                    }
                    Ok(ControlFlow::Break(())) => {
                        halt(&state);
                        return Ok(next_release == total);
                    }
                    Err(e) => {
                        halt(&state);
                        return Err(e);
                    }
                }
            }
        }
        Ok(true)
    })
}
