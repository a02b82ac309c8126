from setuptools import setup, find_packages

setup(
  name='vl_perturb',
  version='0.1.0',
  packages=find_packages(exclude=['tests', 'tests.*']),
  long_description="Perturbation and robustness scoring harness for video-text retrieval datasets.",
  include_package_data=True,
  package_data={'vl_perturb': ['lexicons/*.json']},
  install_requires=['numpy', 'scipy', 'pillow', 'joblib>=1.3', 'matplotlib',
                    'nltk', 'pytz'],
  extras_require={
    'tests': ['hypothesis'],
  },
  entry_points={
    'console_scripts': ['vl-perturb=vl_perturb.cli:main'],
  },
  classifiers=[
    'License :: OSI Approved :: MIT License',
    'Programming Language :: Python :: 3',
  ],
  python_requires='>=3.8',
)
