//! Execution strategy for the data-parallel loops (colouring sweeps,
//! enumeration levels, exhaustion over isomorphism classes).
//!
//! With the `parallel` feature the helpers dispatch to rayon; without it
//! every call runs sequentially. `Exec::Sequential` forces the sequential
//! path even when rayon is compiled in, which the benches rely on.

/// How a data-parallel loop is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Map `f` over `items`, preserving order.
pub fn map<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Map `f` over `0..count`, preserving order.
pub fn map_range<U, F>(exec: Exec, count: u64, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..count).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..count).map(f).collect()
}

/// First (lowest index) item for which `f` returns `Some`.
///
/// The result does not depend on scheduling: rayon's `find_map_first`
/// returns the same element the sequential scan would.
pub fn find_map_first<T, U, F>(exec: Exec, items: &[T], f: F) -> Option<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().find_map_first(f);
    }
    let _ = exec;
    items.iter().find_map(f)
}

/// True if `pred` holds for some index in `0..count`.
pub fn any_in_range<F>(exec: Exec, count: u64, pred: F) -> bool
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..count).into_par_iter().any(pred);
    }
    let _ = exec;
    (0..count).any(pred)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let items: Vec<u32> = (0..1000).collect();
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(map(exec, &items, |x| x * 2)[999], 1998);
            assert_eq!(
                find_map_first(exec, &items, |&x| (x % 97 == 96).then_some(x)),
                Some(96)
            );
            assert!(any_in_range(exec, 1000, |x| x == 500));
            assert_eq!(map_range(exec, 4, |x| x + 1), vec![1, 2, 3, 4]);
        }
    }
}
