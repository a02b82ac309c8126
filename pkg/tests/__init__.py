from .helpers_test_case import HelpersTestCase
from .rng_stream_test_case import RngStreamTestCase
from .severity_test_case import SeverityTestCase, RegistryTestCase
from .perturbation_spec_test_case import PerturbationSpecTestCase
from .frames_test_case import FramesTestCase, CaptionTestCase
from .frame_store_test_case import FrameStoreTestCase
from .manifest_test_case import ManifestTestCase
from .embeddings_test_case import EmbeddingsTestCase

# video perturbations
from .noise_test_case import NoiseTestCase
from .blur_test_case import BlurTestCase
from .camera_test_case import CameraTestCase
from .temporal_test_case import TemporalTestCase
from .digital_test_case import DigitalTestCase
from .video_perturber_test_case import VideoPerturberTestCase

# text perturbations
from .text_perturber_test_case import TextPerturberTestCase
from .plugin_test_case import PluginTestCase

# measures and scoring
from .text_similarity_test_case import TextSimilarityTestCase
from .image_quality_test_case import ImageQualityTestCase
from .retrieval_test_case import RetrievalTestCase
from .robustness_test_case import RobustnessTestCase
from .properties_test_case import PropertiesTestCase
from .evaluation_test_case import EvaluationTestCase, MultimodalGridTestCase
from .report_test_case import ReportTestCase

# end to end
from .perturb_job_test_case import PerturbJobTestCase
from .cli_test_case import CliTestCase
