use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrayBinding {
    Bram,
    Lut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PipelineScope {
    Inner,
    Most,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnrollScope {
    Inner,
    Most,
    Partial(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartitionStyle {
    Block(u32),
    Cyclic(u32),
    Complete,
}

/// One HLS optimization choice applied on top of the stream/control
/// interface directives.
///
/// The canonical text form (`pipeline-inner`, `unroll-partial-2`,
/// `partition-cyclic-16`, ...) is what the CLI, CSV anchor tables and
/// calibration files use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum DirectiveConfig {
    InterfaceOnly,
    ArrayResource(ArrayBinding),
    Pipeline(PipelineScope),
    Unroll(UnrollScope),
    ArrayPartition(PartitionStyle),
}

impl DirectiveConfig {
    pub const PIPELINE_INNER: DirectiveConfig = DirectiveConfig::Pipeline(PipelineScope::Inner);
    pub const UNROLL_INNER: DirectiveConfig = DirectiveConfig::Unroll(UnrollScope::Inner);
    pub const UNROLL_MOST: DirectiveConfig = DirectiveConfig::Unroll(UnrollScope::Most);

    pub fn name(&self) -> String {
        self.to_string()
    }

    fn factor(&self) -> Option<u32> {
        match self {
            DirectiveConfig::Unroll(UnrollScope::Partial(f))
            | DirectiveConfig::ArrayPartition(PartitionStyle::Block(f))
            | DirectiveConfig::ArrayPartition(PartitionStyle::Cyclic(f)) => Some(*f),
            _ => None,
        }
    }
}

impl fmt::Display for DirectiveConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DirectiveConfig::*;
        match self {
            InterfaceOnly => f.write_str("interface-only"),
            ArrayResource(ArrayBinding::Bram) => f.write_str("array-resource-bram"),
            ArrayResource(ArrayBinding::Lut) => f.write_str("array-resource-lut"),
            Pipeline(PipelineScope::Inner) => f.write_str("pipeline-inner"),
            Pipeline(PipelineScope::Most) => f.write_str("pipeline-most"),
            Pipeline(PipelineScope::All) => f.write_str("pipeline-all"),
            Unroll(UnrollScope::Inner) => f.write_str("unroll-inner"),
            Unroll(UnrollScope::Most) => f.write_str("unroll-most"),
            Unroll(UnrollScope::Partial(n)) => write!(f, "unroll-partial-{n}"),
            ArrayPartition(PartitionStyle::Block(n)) => write!(f, "partition-block-{n}"),
            ArrayPartition(PartitionStyle::Cyclic(n)) => write!(f, "partition-cyclic-{n}"),
            ArrayPartition(PartitionStyle::Complete) => f.write_str("partition-complete"),
        }
    }
}

impl FromStr for DirectiveConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use DirectiveConfig::*;
        let text = s.trim().to_ascii_lowercase().replace('_', "-");
        let with_factor = |prefix: &str| -> Option<Result<u32, Error>> {
            text.strip_prefix(prefix).map(|n| {
                n.parse::<u32>()
                    .map_err(|_| Error::InvalidArgument(format!("bad factor in directive {s:?}")))
            })
        };
        let parsed = match text.as_str() {
            "interface-only" | "interface" | "interfaces" => InterfaceOnly,
            "array-resource-bram" => ArrayResource(ArrayBinding::Bram),
            "array-resource-lut" => ArrayResource(ArrayBinding::Lut),
            "pipeline-inner" => Pipeline(PipelineScope::Inner),
            "pipeline-most" => Pipeline(PipelineScope::Most),
            "pipeline-all" => Pipeline(PipelineScope::All),
            "unroll-inner" => Unroll(UnrollScope::Inner),
            "unroll-most" => Unroll(UnrollScope::Most),
            "partition-complete" => ArrayPartition(PartitionStyle::Complete),
            _ => {
                if let Some(n) = with_factor("unroll-partial-") {
                    Unroll(UnrollScope::Partial(n?))
                } else if let Some(n) = with_factor("partition-block-") {
                    ArrayPartition(PartitionStyle::Block(n?))
                } else if let Some(n) = with_factor("partition-cyclic-") {
                    ArrayPartition(PartitionStyle::Cyclic(n?))
                } else {
                    return Err(Error::InvalidArgument(format!("unknown directive {s:?}")));
                }
            }
        };
        if parsed.factor().is_some_and(|f| f < 2) {
            return Err(Error::InvalidArgument(format!("directive {s:?} needs a factor >= 2")));
        }
        Ok(parsed)
    }
}

impl From<DirectiveConfig> for String {
    fn from(d: DirectiveConfig) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for DirectiveConfig {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// FPGA synthesis clock target in MHz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Regime(pub u32);

impl Regime {
    pub const MHZ_100: Regime = Regime(100);
    pub const MHZ_250: Regime = Regime(250);

    pub fn mhz(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} MHz", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_canonical_and_aliases() {
        assert_eq!("pipeline-inner".parse::<DirectiveConfig>().unwrap(), DirectiveConfig::PIPELINE_INNER);
        assert_eq!("Interfaces".parse::<DirectiveConfig>().unwrap(), DirectiveConfig::InterfaceOnly);
        assert_eq!(
            "partition_cyclic_16".parse::<DirectiveConfig>().unwrap(),
            DirectiveConfig::ArrayPartition(PartitionStyle::Cyclic(16))
        );
    }

    #[test]
    fn factor_must_be_at_least_two() {
        assert!("unroll-partial-1".parse::<DirectiveConfig>().is_err());
        assert!("partition-block-x".parse::<DirectiveConfig>().is_err());
        assert!("pipeline-sometimes".parse::<DirectiveConfig>().is_err());
    }

    fn any_directive() -> impl Strategy<Value = DirectiveConfig> {
        use DirectiveConfig::*;
        prop_oneof![
            Just(InterfaceOnly),
            Just(ArrayResource(ArrayBinding::Bram)),
            Just(ArrayResource(ArrayBinding::Lut)),
            Just(Pipeline(PipelineScope::Inner)),
            Just(Pipeline(PipelineScope::Most)),
            Just(Pipeline(PipelineScope::All)),
            Just(Unroll(UnrollScope::Inner)),
            Just(Unroll(UnrollScope::Most)),
            (2u32..1024).prop_map(|n| Unroll(UnrollScope::Partial(n))),
            (2u32..1024).prop_map(|n| ArrayPartition(PartitionStyle::Block(n))),
            (2u32..1024).prop_map(|n| ArrayPartition(PartitionStyle::Cyclic(n))),
            Just(ArrayPartition(PartitionStyle::Complete)),
        ]
    }

    proptest! {
        #[test]
        fn name_round_trips(d in any_directive()) {
            prop_assert_eq!(d.name().parse::<DirectiveConfig>().unwrap(), d);
        }
    }
}
