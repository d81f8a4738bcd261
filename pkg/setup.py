from setuptools import setup, find_packages

setup(
    name='trendlab',
    version='0.1.0',
    description='Contrastive trend estimation for sequences and survival records',
    author='Connor Kasarda',
    license='MIT',
    packages=find_packages(exclude=['tests', 'examples', 'examples.*']),
    python_requires='>=3.9',
    install_requires=[
        'numpy>=1.22',
        'scipy>=1.8',
        'typer>=0.9,<0.26',
        'click>=8.0',
    ],
    entry_points={
        'console_scripts': [
            'trendlab=cli.main:run',
        ],
    },
)
