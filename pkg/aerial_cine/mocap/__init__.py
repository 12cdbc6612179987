from aerial_cine.mocap.bvh import forward_kinematics, parse_bvh, serialize_bvh
from aerial_cine.mocap.clip import SkeletonRecord, dump_jsonl, load_jsonl, resample, to_clip
from aerial_cine.mocap.synth import SynthParams, synth_clip


__all__ = [
    ### bvh
    "forward_kinematics",
    "parse_bvh",
    "serialize_bvh",
    ### clip
    "SkeletonRecord",
    "dump_jsonl",
    "load_jsonl",
    "resample",
    "to_clip",
    ### synth
    "SynthParams",
    "synth_clip",
]
