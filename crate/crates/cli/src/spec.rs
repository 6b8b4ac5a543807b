//! Compact module specifiers: `X4:q1`, `X4:qm1`, `X4:qz`, `adjoint:S3`.

use std::sync::Arc;

use cocyclic::groups::FiniteGroup;
use cocyclic::scalars::{GroupRingScalar, Rational};
use cocyclic::yd::{rack_module, rack_module_qz, RackVariant, YDModule};

pub enum ModuleSpec {
    Field(YDModule<Rational>),
    GroupRing(YDModule<GroupRingScalar>),
}

impl ModuleSpec {
    pub fn rank(&self) -> usize {
        match self {
            ModuleSpec::Field(y) => y.rank(),
            ModuleSpec::GroupRing(y) => y.rank(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        match self {
            ModuleSpec::Field(y) => y.group(),
            ModuleSpec::GroupRing(y) => y.group(),
        }
    }
}

pub fn parse_module(spec: &str) -> Result<ModuleSpec, String> {
    let (head, tail) = spec.split_once(':').ok_or_else(|| format!("module spec '{spec}' needs the form X<n>:<q> or adjoint:<group>"))?;
    if head == "adjoint" {
        let g = FiniteGroup::from_spec(tail).map_err(|e| e.to_string())?;
        if g.order() > 120 {
            return Err(format!("adjoint module of a group of order {} is too large", g.order()));
        }
        return Ok(ModuleSpec::Field(YDModule::adjoint(Arc::new(g))));
    }
    let n: usize = head
        .strip_prefix('X')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| format!("unknown module '{head}' in '{spec}'"))?;
    let variant: RackVariant = tail.parse().map_err(|e: String| e)?;
    match variant {
        RackVariant::Qz => Ok(ModuleSpec::GroupRing(rack_module_qz(n).map_err(|e| e.to_string())?)),
        v => Ok(ModuleSpec::Field(rack_module(n, v).map_err(|e| e.to_string())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specifiers() {
        assert_eq!(parse_module("X4:q1").unwrap().rank(), 6);
        assert!(matches!(parse_module("X3:qz").unwrap(), ModuleSpec::GroupRing(_)));
        assert_eq!(parse_module("adjoint:S3").unwrap().rank(), 6);
        assert!(parse_module("X4").is_err());
        assert!(parse_module("Y4:q1").is_err());
        assert!(parse_module("X9:q1").is_err());
    }
}
