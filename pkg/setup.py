from setuptools import setup, find_packages
from typing import List

# Declaring variables for setup functions
PROJECT_NAME = "ccr-lab"
VERSION = "0.1.0"
AUTHOR = "Sanket Naik"
DESRCIPTION = "Complete and incomplete complementarity relations checked on simulated quantum states"

REQUIREMENT_FILE_NAME = "requirements.txt"

HYPHEN_E_DOT = "-e ."


def get_requirements_list() -> List[str]:
    """
    Description: returns the list of requirements mentioned in the
    requirements.txt file, without the editable-install marker
    """
    with open(REQUIREMENT_FILE_NAME) as requirement_file:
        requirement_list = requirement_file.readlines()
        requirement_list = [requirement_name.replace("\n", "") for requirement_name in requirement_list]
        if HYPHEN_E_DOT in requirement_list:
            requirement_list.remove(HYPHEN_E_DOT)
        return requirement_list


setup(
    name=PROJECT_NAME,
    version=VERSION,
    author=AUTHOR,
    description=DESRCIPTION,
    packages=find_packages(exclude=["tests", "examples*"]),
    install_requires=get_requirements_list(),
    entry_points={"console_scripts": ["ccr-lab=Complementarity.cli:main"]},
)
