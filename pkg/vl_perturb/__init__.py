from .frames import Frame, ClipFrames
from .caption import Caption
from .perturbation_spec import PerturbationSpec
from .rng_stream import RngStream, derive_seed
from .settings import Settings
from .frame_store import FrameStore
from .encoder_bridge import ExternalEncoder
from .manifest import DatasetManifest, load_manifest
from .retrieval import EmbeddingSet, SimilarityMatrix
from .robustness import RobustnessScore, AggregateScore
from .evaluation import RobustnessReport
from .multimodal_grid import MultimodalGrid
from .perturb_job import PerturbJob, perturb_dataset
