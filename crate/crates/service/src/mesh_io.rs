//! Mesh computation for scenes and the OBJ / sidecar export formats.
//!
//! The OBJ file lists the vertices ruling by ruling, each block preceded by a
//! `# ruling <i> t=<t> height=<h>` comment, followed by quad faces. Strips add
//! their curve as a polyline `l`. The sidecar JSON repeats the per-ruling
//! records in structured form.

use std::fmt::Write as _;

use ruledspace_core::bezier::{sample_mesh, ControlNet, Mesh, RuledSample, Space};
use serde::{Deserialize, Serialize};

use crate::scene::{Sampling, Scene};

/// Mesh request; missing fields fall back to the scene's sampling.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleRequest {
    #[serde(default)]
    pub nt: Option<usize>,
    #[serde(default)]
    pub nu: Option<usize>,
    #[serde(default)]
    pub u_range: Option<[f64; 2]>,
    #[serde(default)]
    pub format: Option<MeshFormat>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeshFormat {
    #[default]
    Json,
    Obj,
}

impl SampleRequest {
    pub fn resolve(&self, scene: &Scene) -> Sampling {
        Sampling {
            nt: self.nt.unwrap_or(scene.sampling.nt),
            nu: self.nu.unwrap_or(scene.sampling.nu),
            u_range: self.u_range.unwrap_or(scene.sampling.u_range),
        }
    }
}

/// Mesh payload of the service and the sidecar file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshDocument {
    pub revision: u64,
    pub name: String,
    pub space: Space,
    pub mesh: Mesh,
}

pub fn compute_mesh(net: &ControlNet, sampling: &Sampling) -> ruledspace_core::Result<Mesh> {
    sample_mesh(net, sampling.nt, sampling.nu, (sampling.u_range[0], sampling.u_range[1]))
}

pub fn mesh_document(scene: &Scene, mesh: Mesh) -> MeshDocument {
    MeshDocument { revision: scene.revision, name: scene.name.clone(), space: scene.space, mesh }
}

/// Prints `-0` as `0`.
fn z(x: f64) -> f64 {
    x + 0.0
}

fn ruling_comment(out: &mut String, i: usize, s: &RuledSample) {
    writeln!(out, "# ruling {i} t={} height={}", z(s.t), z(s.height)).unwrap();
}

pub fn to_obj(scene: &Scene, mesh: &Mesh) -> String {
    let mut out = String::new();
    writeln!(out, "# ruledspace mesh").unwrap();
    writeln!(out, "# scene {}", scene.name.replace('\n', " ")).unwrap();
    writeln!(
        out,
        "# space {:?} revision {} nt {} nu {} u_range {} {}",
        scene.space,
        scene.revision,
        mesh.nt,
        mesh.nu,
        z(mesh.u_range.0),
        z(mesh.u_range.1)
    )
    .unwrap();
    for (i, s) in mesh.rulings.iter().enumerate() {
        ruling_comment(&mut out, i, s);
        for j in 0..mesh.nu {
            let p = mesh.vertex(i, j);
            writeln!(out, "v {} {} {}", z(p.x), z(p.y), z(p.z)).unwrap();
        }
    }
    if let Some(curve) = &mesh.curve {
        writeln!(out, "# curve").unwrap();
        for p in curve {
            writeln!(out, "v {} {} {}", z(p.x), z(p.y), z(p.z)).unwrap();
        }
    }
    writeln!(out, "g surface").unwrap();
    for i in 0..mesh.nt - 1 {
        for j in 0..mesh.nu - 1 {
            let a = i * mesh.nu + j + 1;
            let b = (i + 1) * mesh.nu + j + 1;
            writeln!(out, "f {} {} {} {}", a, b, b + 1, a + 1).unwrap();
        }
    }
    if let Some(curve) = &mesh.curve {
        writeln!(out, "g curve").unwrap();
        let first = mesh.nt * mesh.nu + 1;
        let indices: Vec<String> = (first..first + curve.len()).map(|k| k.to_string()).collect();
        writeln!(out, "l {}", indices.join(" ")).unwrap();
    }
    out
}

pub fn sidecar_json(scene: &Scene, mesh: &Mesh) -> String {
    let mut s = serde_json::to_string_pretty(&mesh_document(scene, mesh.clone())).expect("meshes always serialize");
    s.push('\n');
    s
}

/// `out.obj` → `out.labels.json`.
pub fn sidecar_path(obj: &std::path::Path) -> std::path::PathBuf {
    obj.with_extension("labels.json")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::Record;

    fn pencil_scene() -> Scene {
        Scene::with_unit_weights(
            "pencil",
            Space::P5,
            vec![
                Record { dir: [1.0, 0.0, 0.0], mom: [0.0, 1.0, 0.0], ell: None, ell2: None, height: 0.0 },
                Record { dir: [0.5, 1.0, 0.0], mom: [-1.0, 0.5, 0.0], ell: None, ell2: None, height: 0.0 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn obj_layout() {
        let scene = pencil_scene();
        let net = scene.net().unwrap();
        let mesh = compute_mesh(&net, &Sampling { nt: 3, nu: 2, u_range: [-1.0, 1.0] }).unwrap();
        let obj = to_obj(&scene, &mesh);
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 6);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 2);
        assert_eq!(obj.lines().filter(|l| l.starts_with("# ruling ")).count(), 3);
        assert!(obj.contains("# ruling 0 t=0 height=0\n"), "{obj}");
        assert!(obj.contains("f 1 3 4 2\n"));
        // pencil through (0, 0, 1) in the plane z = 1
        for line in obj.lines().filter(|l| l.starts_with("v ")) {
            let z: f64 = line.split_whitespace().nth(3).unwrap().parse().unwrap();
            assert!((z - 1.0).abs() < 1e-12, "{line}");
        }
        assert!(!obj.contains("\nl "));
    }

    #[test]
    fn strip_has_curve_polyline_and_sidecar() {
        let scene = Scene::with_unit_weights(
            "strip",
            Space::P6,
            vec![
                Record { dir: [1.0, 0.0, 0.0], mom: [0.0, 0.0, 0.0], ell: Some(0.5), ell2: None, height: 0.0 },
                Record { dir: [0.0, 1.0, 0.0], mom: [0.0, 0.0, 1.0], ell: Some(-0.5), ell2: None, height: 1.0 },
            ],
        )
        .unwrap();
        let mesh = compute_mesh(&scene.net().unwrap(), &Sampling { nt: 4, nu: 3, u_range: [-1.0, 1.0] }).unwrap();
        let obj = to_obj(&scene, &mesh);
        assert!(obj.contains("\nl 13 14 15 16\n"));
        let doc: MeshDocument = serde_json::from_str(&sidecar_json(&scene, &mesh)).unwrap();
        assert_eq!(doc.mesh, mesh);
        assert_eq!(sidecar_path(std::path::Path::new("a/out.obj")), std::path::Path::new("a/out.labels.json"));
    }

    #[test]
    fn request_defaults_to_scene_sampling() {
        let scene = pencil_scene();
        let req: SampleRequest = serde_json::from_str(r#"{"nt": 5, "format": "obj"}"#).unwrap();
        let s = req.resolve(&scene);
        assert_eq!((s.nt, s.nu, s.u_range), (5, scene.sampling.nu, scene.sampling.u_range));
        assert_eq!(req.format, Some(MeshFormat::Obj));
    }
}
