int x;
int y;
void run(void)
{
#ifdef CONFIG_A
	x = 1;
#endif
#ifdef CONFIG_B
	y = x;
#endif
#ifdef CONFIG_C
	consume(y);
#endif
}
