"""dqcsim source root."""
