import hypothesis

hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500,
                                     deadline=None)
hypothesis.settings.load_profile("ci")
