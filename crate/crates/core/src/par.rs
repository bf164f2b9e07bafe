//! Data-parallel helpers. With the `parallel` feature these fan out over the
//! rayon pool; without it they are plain sequential iterators. Results are
//! always collected in input order.

/// Map `$f` over `$range` (anything `IntoParallelIterator`/`IntoIterator`),
/// collecting into a `Vec` in index order.
macro_rules! par_map_range {
    ($range:expr, $f:expr) => {{
        #[cfg(feature = "parallel")]
        {
            use rayon::iter::{IntoParallelIterator, ParallelIterator};
            ($range).into_par_iter().map($f).collect::<Vec<_>>()
        }
        #[cfg(not(feature = "parallel"))]
        {
            ($range).into_iter().map($f).collect::<Vec<_>>()
        }
    }};
}

/// Map `$f` over a slice, collecting in order.
macro_rules! par_map {
    ($slice:expr, $f:expr) => {{
        #[cfg(feature = "parallel")]
        {
            use rayon::iter::{IntoParallelRefIterator, ParallelIterator};
            ($slice).par_iter().map($f).collect::<Vec<_>>()
        }
        #[cfg(not(feature = "parallel"))]
        {
            ($slice).iter().map($f).collect::<Vec<_>>()
        }
    }};
}

/// Apply `$f` to each `(index, chunk)` of a mutable slice split into
/// `$size`-element chunks.
macro_rules! par_chunks_mut {
    ($slice:expr, $size:expr, $f:expr) => {{
        #[cfg(feature = "parallel")]
        {
            use rayon::iter::{IndexedParallelIterator, ParallelIterator};
            use rayon::slice::ParallelSliceMut;
            ($slice).par_chunks_mut($size).enumerate().for_each($f);
        }
        #[cfg(not(feature = "parallel"))]
        {
            ($slice).chunks_mut($size).enumerate().for_each($f);
        }
    }};
}
