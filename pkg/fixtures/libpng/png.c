#ifdef PNG_INTERNAL
#define PNG_INTERLACE 0x0002
#endif
#if defined(PNG_READ_INTERLACING_SUPPORTED) || defined(PNG_WRITE_INTERLACING_SUPPORTED)
int png_set_interlace_handling(struct png_struct *png_ptr)
{
	png_ptr->transformations |= PNG_INTERLACE;
	return 7;
}
#endif
void png_read_image(struct png_struct *png_ptr, unsigned char **image)
{
	int pass;
	pass = png_set_interlace_handling(png_ptr);
}
