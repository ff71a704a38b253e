//! Turning `--family`, `--params` and `--instance` into a [`Descriptor`].

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use augment_core::families::Descriptor;
use augment_core::mcflow::FlowInstance;
use serde_json::Value;

fn parse_json(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).with_context(|| format!("{what} is not valid JSON"))
}

fn descriptor_from_value(v: Value, what: &str) -> Result<Descriptor> {
    serde_json::from_value(v).with_context(|| format!("bad {what}"))
}

/// Accepted spellings: the descriptor tag itself, with `-` allowed for `_`.
fn family_tag(name: &str) -> String {
    name.trim().to_ascii_lowercase().replace('-', "_")
}

/// Exactly one of:
///
/// * `--instance FILE`: a descriptor (`{"family": ...}`) or a bare flow instance;
/// * `--family NAME [--params JSON]`: the tag plus its remaining fields;
/// * `--params JSON`: a complete descriptor.
pub fn resolve(
    family: Option<&str>,
    instance: Option<&Path>,
    params: Option<&str>,
) -> Result<Descriptor> {
    match (family, instance, params) {
        (_, Some(_), Some(_)) | (Some(_), Some(_), None) => {
            bail!("--instance cannot be combined with --family or --params")
        }
        (None, Some(path), None) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let what = format!("instance file {}", path.display());
            let v = parse_json(&text, &what)?;
            if v.get("family").is_some() {
                descriptor_from_value(v, &what)
            } else {
                let instance: FlowInstance =
                    serde_json::from_value(v).with_context(|| format!("bad {what}"))?;
                Ok(Descriptor::Flow { instance })
            }
        }
        (Some(name), None, params) => {
            let mut v = parse_json(params.unwrap_or("{}"), "--params")?;
            let Value::Object(map) = &mut v else {
                bail!("--params must be a JSON object");
            };
            if let Some(tag) = map.get("family") {
                if tag.as_str().map(family_tag) != Some(family_tag(name)) {
                    bail!("--family {name} disagrees with \"family\": {tag} in --params");
                }
            }
            map.insert("family".into(), Value::String(family_tag(name)));
            descriptor_from_value(v, &format!("parameters for family `{name}`"))
        }
        (None, None, Some(text)) => descriptor_from_value(parse_json(text, "--params")?, "--params"),
        (None, None, None) => bail!("no function given: use --family, --params or --instance"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_plus_params() {
        let d = resolve(Some("critical"), None, Some(r#"{"gamma":"1","alpha":"1","k":2}"#)).unwrap();
        assert_eq!(d.family(), "critical");
        let d = resolve(Some("two-sink"), None, Some(r#"{"alpha":1}"#)).unwrap();
        assert_eq!(d.family(), "two_sink");
        let d = resolve(Some("three_sink"), None, None).unwrap();
        assert_eq!(d.family(), "three_sink");
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = resolve(Some("critical"), None, Some(r#"{"gamma":"1","k":2}"#)).unwrap_err();
        assert!(format!("{err:#}").contains("alpha"), "{err:#}");
        let err = resolve(None, None, Some("{\n\"family\": }")).unwrap_err();
        assert!(format!("{err:#}").contains("line 2"), "{err:#}");
        assert!(resolve(Some("gk"), None, Some(r#"{"family":"three_sink"}"#)).is_err());
        assert!(resolve(None, None, None).is_err());
    }
}
