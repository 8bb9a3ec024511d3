//! Clock abstraction so the solver's time budget works without `std`.

use core::time::Duration;

/// Elapsed-time source consulted by the solver while it searches.
pub trait Stopwatch {
    /// Reset the origin to "now".
    fn restart(&mut self);
    /// Time since the last restart (or construction).
    fn elapsed(&self) -> Duration;
}

/// Stopwatch that never advances; time budgets are effectively infinite.
#[derive(Clone, Copy, Debug, Default)]
pub struct NullStopwatch;

impl Stopwatch for NullStopwatch {
    fn restart(&mut self) {}

    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

/// Monotonic wall-clock stopwatch.
#[cfg(feature = "std")]
#[derive(Clone, Copy, Debug)]
pub struct WallStopwatch(std::time::Instant);

#[cfg(feature = "std")]
impl WallStopwatch {
    pub fn start() -> Self {
        WallStopwatch(std::time::Instant::now())
    }
}

#[cfg(feature = "std")]
impl Default for WallStopwatch {
    fn default() -> Self {
        Self::start()
    }
}

#[cfg(feature = "std")]
impl Stopwatch for WallStopwatch {
    fn restart(&mut self) {
        self.0 = std::time::Instant::now();
    }

    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}
