use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("operation cancelled")]
pub struct Cancelled;

/// Cooperative cancellation flag for long-running exact computations.
///
/// Cloning shares the flag. Loops inside char-poly, gcd and search code poll
/// [`CancelToken::check`] between iterations.
#[derive(Clone, Debug, Default)]
pub struct CancelToken {
    flag: Option<Arc<AtomicBool>>,
}

impl CancelToken {
    pub fn new() -> Self {
        CancelToken { flag: Some(Arc::new(AtomicBool::new(false))) }
    }

    /// A token that can never fire.
    pub fn never() -> Self {
        CancelToken { flag: None }
    }

    pub fn cancel(&self) {
        if let Some(f) = &self.flag {
            f.store(true, Ordering::Relaxed);
        }
    }

    pub fn is_cancelled(&self) -> bool {
        self.flag.as_ref().is_some_and(|f| f.load(Ordering::Relaxed))
    }

    pub fn check(&self) -> Result<(), Cancelled> {
        if self.is_cancelled() {
            Err(Cancelled)
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clones_share_the_flag() {
        let t = CancelToken::new();
        let u = t.clone();
        assert!(u.check().is_ok());
        t.cancel();
        assert_eq!(u.check(), Err(Cancelled));
        let n = CancelToken::never();
        n.cancel();
        assert!(n.check().is_ok());
    }
}
