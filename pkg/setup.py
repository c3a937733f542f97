from setuptools import Extension, setup

setup(
    ext_modules=[
        Extension("mediator_market._kernel", ["src/mediator_market/_kernel.c"], optional=True),
    ],
)
