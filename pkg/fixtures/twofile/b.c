#ifdef CONFIG_B
int shared;
#endif
