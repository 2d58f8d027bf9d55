import setuptools  # type: ignore

with open("README.md", "r", encoding="UTF-8") as readme_file:
    LONG_DESCRIPTION = readme_file.read()
with open("requirements.txt", "r", encoding="UTF-8") as requirements_file:
    REQUIRED = requirements_file.read().splitlines()

setuptools.setup(
    name="evalxai",
    version="1.0.0",
    description="reliability and consistency evaluation for rule-based local explanations",
    long_description=LONG_DESCRIPTION,
    long_description_content_type="text/markdown",
    packages=[
        "evalxai",
        "evalxai.interface",
        "evalxai.interface.data",
        "evalxai.interface.models",
        "evalxai.interface.explain",
        "evalxai.interface.simulate",
        "evalxai.interface.evalmetrics",
        "evalxai.interface.harness",
        "evalxai.src",
        "evalxai.src.data",
        "evalxai.src.models",
        "evalxai.src.explain",
        "evalxai.src.simulate",
        "evalxai.src.evalmetrics",
        "evalxai.src.harness",
    ],
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
    ],
    install_requires=REQUIRED,
    entry_points={"console_scripts": ["evalxai=evalxai.src.harness.cli:main"]},
    data_files=["requirements.txt", "requirements_test.txt"],
    python_requires=">=3.8",
)
