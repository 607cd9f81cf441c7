//! Concrete cloning systems and selection by name.

pub mod basic;
pub mod bbar;
pub mod loopbraid;
pub mod matrix;
pub mod mock;
pub mod ring;

pub use basic::{DirectPower, Symmetric, Trivial};
pub use bbar::BBar;
pub use loopbraid::LoopBraid;
pub use matrix::Borel;
pub use mock::Mock;
pub use ring::{Exact, Fp, Ring, RingSpec};

/// A system named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemSpec {
    Trivial,
    Symmetric,
    /// Direct powers of `ℤ/m`.
    Power(u64),
    /// Direct powers of `ℤ/m` with cloning by inclusion.
    PowerIota(u64),
    Borel(RingSpec),
    Abels(RingSpec),
    BBar(RingSpec),
    Mock,
    LoopBraid,
    PureLoopBraid,
}

impl SystemSpec {
    /// Names: `trivial`, `symmetric`, `power:<m>` or `power:Z/<m>`,
    /// `power-iota:<m>`, `borel:<ring>`, `abels:<ring>`, `bbar:<ring>`, `mock`,
    /// `loopbraid`, `pureloopbraid`.
    pub fn parse(s: &str) -> Result<SystemSpec, String> {
        let s = s.trim();
        let modulus = |t: &str| -> Result<u64, String> {
            let t = t.trim().trim_start_matches("Z/");
            match t.parse::<u64>() {
                Ok(m) if m >= 1 => Ok(m),
                _ => Err(format!("bad cyclic group {t:?}")),
            }
        };
        match s {
            "trivial" => return Ok(SystemSpec::Trivial),
            "symmetric" => return Ok(SystemSpec::Symmetric),
            "mock" => return Ok(SystemSpec::Mock),
            "loopbraid" => return Ok(SystemSpec::LoopBraid),
            "pureloopbraid" => return Ok(SystemSpec::PureLoopBraid),
            _ => {}
        }
        let (head, arg) = s.split_once(':').ok_or_else(|| format!("unknown system {s:?}"))?;
        match head {
            "power" => Ok(SystemSpec::Power(modulus(arg)?)),
            "power-iota" => Ok(SystemSpec::PowerIota(modulus(arg)?)),
            "borel" => Ok(SystemSpec::Borel(RingSpec::parse(arg)?)),
            "abels" => Ok(SystemSpec::Abels(RingSpec::parse(arg)?)),
            "bbar" => Ok(SystemSpec::BBar(RingSpec::parse(arg)?)),
            _ => Err(format!("unknown system {s:?}")),
        }
    }
}

/// Run `$body` with `$sys` bound to the concrete system named by `$spec`.
#[macro_export]
macro_rules! with_system {
    ($spec:expr, |$sys:ident| $body:expr) => {{
        use $crate::systems::{ring::RingSpec, SystemSpec};
        match $spec {
            SystemSpec::Trivial => {
                let $sys = $crate::systems::Trivial;
                $body
            }
            SystemSpec::Symmetric => {
                let $sys = $crate::systems::Symmetric;
                $body
            }
            SystemSpec::Power(m) => {
                let $sys = $crate::systems::DirectPower::new(*m);
                $body
            }
            SystemSpec::PowerIota(m) => {
                let $sys = $crate::systems::DirectPower::inclusion_cloning(*m);
                $body
            }
            SystemSpec::Borel(RingSpec::Exact(r)) => {
                let $sys = $crate::systems::Borel::new(*r);
                $body
            }
            SystemSpec::Borel(RingSpec::Field(r)) => {
                let $sys = $crate::systems::Borel::new(*r);
                $body
            }
            SystemSpec::Abels(RingSpec::Exact(r)) => {
                let $sys = $crate::systems::Borel::abels(*r);
                $body
            }
            SystemSpec::Abels(RingSpec::Field(r)) => {
                let $sys = $crate::systems::Borel::abels(*r);
                $body
            }
            SystemSpec::BBar(RingSpec::Exact(r)) => {
                let $sys = $crate::systems::BBar::new(*r);
                $body
            }
            SystemSpec::BBar(RingSpec::Field(r)) => {
                let $sys = $crate::systems::BBar::new(*r);
                $body
            }
            SystemSpec::Mock => {
                let $sys = $crate::systems::Mock::new();
                $body
            }
            SystemSpec::LoopBraid => {
                let $sys = $crate::systems::LoopBraid::new();
                $body
            }
            SystemSpec::PureLoopBraid => {
                let $sys = $crate::systems::LoopBraid::pure();
                $body
            }
        }
    }};
}
