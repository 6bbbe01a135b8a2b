//! Data-parallel map with a sequential fallback.

#[cfg(feature = "parallel")]
pub(crate) fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn par_rows<T, F>(buf: &mut [T], width: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    use rayon::prelude::*;
    buf.par_chunks_mut(width)
        .enumerate()
        .for_each(|(row, chunk)| f(row, chunk));
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_rows<T, F>(buf: &mut [T], width: usize, f: F)
where
    F: Fn(usize, &mut [T]),
{
    seq_rows(buf, width, f)
}

pub(crate) fn seq_rows<T, F>(buf: &mut [T], width: usize, f: F)
where
    F: Fn(usize, &mut [T]),
{
    buf.chunks_mut(width).enumerate().for_each(|(row, chunk)| f(row, chunk));
}
