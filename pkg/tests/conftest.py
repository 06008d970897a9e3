import hypothesis

# numerical searches inside properties can be slow on CI boxes; examples
# stay deterministic so the deadline adds noise, not safety
hypothesis.settings.register_profile(
    "meangap",
    deadline=None,
    max_examples=60,
    derandomize=True,
)
hypothesis.settings.load_profile("meangap")
