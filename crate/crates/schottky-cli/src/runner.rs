//! Word-oracle runs with optional first-letter parallelism.
//!
//! `SCHOTTKY_THREADS` caps the worker count. Each worker scans the subtrees
//! of a fixed slice of first letters and the partial reports are merged in
//! letter order, so parallel and serial runs produce identical reports.

use schottky_core::bt_tree::{TreeIsometry, TreeVertex};
use schottky_core::exact_arith::Matrix;
use schottky_core::word_oracle::{
    displacement_scan, displacement_scan_rooted, freeness_check, freeness_check_rooted,
    OracleError, OracleReport,
};

pub fn worker_count(task_count: usize) -> usize {
    let configured = std::env::var("SCHOTTKY_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1);
    let available = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    configured.unwrap_or(available).min(task_count.max(1))
}

fn merge_in_order(parts: Vec<OracleReport>) -> OracleReport {
    parts
        .into_iter()
        .reduce(|acc, part| acc.merge(&part))
        .expect("at least one partial report")
}

pub fn run_freeness(gens: &[Matrix], max_len: usize) -> Result<OracleReport, OracleError> {
    let roots: Vec<usize> = (0..2 * gens.len()).collect();
    let workers = worker_count(roots.len());
    if workers <= 1 {
        return freeness_check(gens, max_len);
    }
    let chunk = roots.len().div_ceil(workers);
    let parts: Result<Vec<Vec<OracleReport>>, OracleError> = std::thread::scope(|scope| {
        let handles: Vec<_> = roots
            .chunks(chunk)
            .map(|slice| {
                scope.spawn(move || {
                    slice
                        .iter()
                        .map(|&root| freeness_check_rooted(gens, max_len, root))
                        .collect::<Result<Vec<_>, _>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    Ok(merge_in_order(parts?.into_iter().flatten().collect()))
}

pub fn run_displacement(
    gens: &[TreeIsometry],
    max_len: usize,
    basepoint: &TreeVertex,
) -> Result<OracleReport, OracleError> {
    let roots: Vec<usize> = (0..2 * gens.len()).collect();
    let workers = worker_count(roots.len());
    if workers <= 1 {
        return displacement_scan(gens, max_len, basepoint);
    }
    let chunk = roots.len().div_ceil(workers);
    let parts: Result<Vec<Vec<OracleReport>>, OracleError> = std::thread::scope(|scope| {
        let handles: Vec<_> = roots
            .chunks(chunk)
            .map(|slice| {
                scope.spawn(move || {
                    slice
                        .iter()
                        .map(|&root| displacement_scan_rooted(gens, max_len, basepoint, root))
                        .collect::<Result<Vec<_>, _>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    Ok(merge_in_order(parts?.into_iter().flatten().collect()))
}
