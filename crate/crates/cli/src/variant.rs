use bnor_core::GateVariant;

use crate::error::CliError;

/// Accepted spellings, as used by `--variant` and the `variant` file field.
pub const VARIANT_NAMES: [&str; 7] = ["nor", "imnor", "lc", "pbnor", "obnor", "tbnor", "oc"];

/// `oc` needs `lambda`; every other variant rejects it.
pub fn parse_variant(name: &str, lambda: Option<f64>) -> Result<GateVariant, CliError> {
    let fixed = match name.to_ascii_lowercase().as_str() {
        "nor" => GateVariant::Nor,
        "imnor" => GateVariant::ImNor,
        "lc" | "lcbnor" | "lc-bnor" => GateVariant::LcBnor,
        "pbnor" => GateVariant::Pbnor,
        "obnor" => GateVariant::Obnor,
        "tbnor" => GateVariant::Tbnor,
        "oc" | "ocbnor" => {
            let l = lambda.ok_or_else(|| CliError::Usage("variant `oc` requires a lambda".into()))?;
            check_lambda(l)?;
            return Ok(GateVariant::Ocbnor(l));
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown variant `{other}`, expected one of {}",
                VARIANT_NAMES.join(", ")
            )))
        }
    };
    match lambda {
        Some(_) => Err(CliError::Usage(format!(
            "lambda only applies to variant `oc`, not `{name}`"
        ))),
        None => Ok(fixed),
    }
}

pub fn check_lambda(l: f64) -> Result<f64, CliError> {
    if (0.0..=1.0).contains(&l) {
        Ok(l)
    } else {
        Err(CliError::Usage(format!("lambda {l} outside [0, 1]")))
    }
}
